#include "wulffkit/geom/polytope.hpp"

#include "wulffkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <numeric>

namespace wulffkit::geom {
namespace {

constexpr double kSnap = 1e-12;

struct RawFacet {
  std::vector<int> verts;  // sorted
  Vec normal;
  double offset = 0.0;
  bool alive = true;
};

double coordinate_scale(const PointList& pts) {
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  return std::max(scale, 1.0);
}

// Unit normal of the hyperplane through pts[idx[0..n-1]] by cofactor
// expansion of the difference matrix.
Vec hyperplane_normal(const PointList& pts, const std::vector<int>& idx) {
  const int n = static_cast<int>(pts[static_cast<std::size_t>(idx[0])].size());
  Mat diff(n - 1, n);
  for (int k = 1; k < n; ++k)
    diff.row(k - 1) = (pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] -
                       pts[static_cast<std::size_t>(idx[0])])
                          .transpose();
  Vec normal(n);
  Mat minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i) {
    for (int c = 0, m = 0; c < n; ++c) {
      if (c == i) continue;
      minor.col(m++) = diff.col(c);
    }
    const double det = n == 1 ? 1.0 : minor.determinant();
    normal(i) = (i % 2 == 0) ? det : -det;
  }
  return normal / normal.norm();
}

double simplex_area(const PointList& pts, const std::vector<int>& idx) {
  const int n = static_cast<int>(pts[static_cast<std::size_t>(idx[0])].size());
  Mat g(n, n - 1);
  for (int k = 1; k < n; ++k)
    g.col(k - 1) = pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] -
                   pts[static_cast<std::size_t>(idx[0])];
  const double gram = (g.transpose() * g).determinant();
  return std::sqrt(std::max(gram, 0.0)) / factorial(n - 1);
}

bool lex_less_snapped(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double sa = std::round(a(i) / kSnap);
    const double sb = std::round(b(i) / kSnap);
    if (sa != sb) return sa < sb;
  }
  return false;
}

// Beneath-beyond incremental hull. Returns the surviving simplicial facets.
std::vector<RawFacet> incremental_hull(const PointList& pts, int n, Vec& interior) {
  const double scale = coordinate_scale(pts);
  const double eps = 1e-10 * scale;
  const int count = static_cast<int>(pts.size());

  // Initial simplex: greedy farthest points from the growing affine hull.
  int first = 0;
  for (int i = 1; i < count; ++i)
    if (lex_less_snapped(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(first)]))
      first = i;
  std::vector<int> simplex{first};
  std::vector<Vec> basis;
  const Vec& origin = pts[static_cast<std::size_t>(first)];
  for (int k = 0; k < n; ++k) {
    int best = -1;
    double best_dist = 0.0;
    Vec best_res;
    for (int i = 0; i < count; ++i) {
      Vec r = pts[static_cast<std::size_t>(i)] - origin;
      for (const auto& b : basis) r -= b.dot(r) * b;
      const double d = r.norm();
      if (d > best_dist) {
        best_dist = d;
        best = i;
        best_res = r;
      }
    }
    if (best < 0 || best_dist <= 1e-9 * scale)
      throw Error(Errc::DegenerateInput, "points lie in a proper affine subspace");
    basis.push_back(best_res / best_dist);
    simplex.push_back(best);
  }

  interior = Vec::Zero(n);
  for (int i : simplex) interior += pts[static_cast<std::size_t>(i)];
  interior /= static_cast<double>(n + 1);

  std::vector<RawFacet> facets;
  auto make_facet = [&](std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    RawFacet f;
    f.normal = hyperplane_normal(pts, verts);
    f.offset = f.normal.dot(pts[static_cast<std::size_t>(verts[0])]);
    if (f.normal.dot(interior) > f.offset) {
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
    f.verts = std::move(verts);
    facets.push_back(std::move(f));
  };
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> verts;
    for (int k = 0; k <= n; ++k)
      if (k != skip) verts.push_back(simplex[static_cast<std::size_t>(k)]);
    make_facet(std::move(verts));
  }

  // Remaining points, farthest from the interior point first.
  std::vector<int> order;
  for (int i = 0; i < count; ++i)
    if (std::find(simplex.begin(), simplex.end(), i) == simplex.end()) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return (pts[static_cast<std::size_t>(a)] - interior).squaredNorm() >
           (pts[static_cast<std::size_t>(b)] - interior).squaredNorm();
  });

  for (int p : order) {
    const Vec& x = pts[static_cast<std::size_t>(p)];
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (facets[f].alive && facets[f].normal.dot(x) - facets[f].offset > eps) visible.push_back(f);
    if (visible.empty()) continue;

    // A ridge of a visible facet is on the horizon iff no other visible
    // facet shares it.
    std::map<std::vector<int>, int> ridge_count;
    for (std::size_t f : visible) {
      const auto& v = facets[f].verts;
      for (std::size_t drop = 0; drop < v.size(); ++drop) {
        std::vector<int> ridge;
        for (std::size_t k = 0; k < v.size(); ++k)
          if (k != drop) ridge.push_back(v[k]);
        ++ridge_count[ridge];
      }
    }
    for (std::size_t f : visible) facets[f].alive = false;
    for (const auto& [ridge, c] : ridge_count) {
      if (c != 1) continue;
      std::vector<int> verts = ridge;
      verts.push_back(p);
      make_facet(std::move(verts));
    }
  }

  std::vector<RawFacet> alive;
  for (auto& f : facets)
    if (f.alive) alive.push_back(std::move(f));
  return alive;
}

struct MergedFacet {
  Vec normal;
  double offset = 0.0;
  double area = 0.0;
  std::vector<int> members;  // indices into the raw facet list
  std::vector<int> verts;    // sorted, unique (raw point indices)
};

std::vector<MergedFacet> merge_coplanar(const PointList& pts, const std::vector<RawFacet>& raw) {
  const double tol = 1e-9 * coordinate_scale(pts);
  std::vector<MergedFacet> groups;
  std::vector<double> areas(raw.size());
  for (std::size_t f = 0; f < raw.size(); ++f) areas[f] = simplex_area(pts, raw[f].verts);

  for (std::size_t f = 0; f < raw.size(); ++f) {
    MergedFacet* home = nullptr;
    for (auto& g : groups) {
      const RawFacet& lead = raw[static_cast<std::size_t>(g.members[0])];
      if (lead.normal.dot(raw[f].normal) <= 0.0) continue;
      bool coplanar = true;
      for (int v : raw[f].verts)
        if (std::abs(lead.normal.dot(pts[static_cast<std::size_t>(v)]) - lead.offset) > tol) {
          coplanar = false;
          break;
        }
      if (coplanar) {
        home = &g;
        break;
      }
    }
    if (home == nullptr) {
      groups.emplace_back();
      home = &groups.back();
    }
    home->members.push_back(static_cast<int>(f));
  }

  for (auto& g : groups) {
    const int n = static_cast<int>(raw[static_cast<std::size_t>(g.members[0])].normal.size());
    Vec normal = Vec::Zero(n);
    for (int m : g.members) {
      normal += areas[static_cast<std::size_t>(m)] * raw[static_cast<std::size_t>(m)].normal;
      g.area += areas[static_cast<std::size_t>(m)];
      for (int v : raw[static_cast<std::size_t>(m)].verts) g.verts.push_back(v);
    }
    std::sort(g.verts.begin(), g.verts.end());
    g.verts.erase(std::unique(g.verts.begin(), g.verts.end()), g.verts.end());
    g.normal = normal / normal.norm();
    double offset = 0.0;
    for (int v : g.verts) offset += g.normal.dot(pts[static_cast<std::size_t>(v)]);
    g.offset = offset / static_cast<double>(g.verts.size());
  }
  return groups;
}

// A boundary vertex is extreme iff the normals of the facets through it
// span Rⁿ.
std::vector<int> extreme_vertices(const std::vector<MergedFacet>& groups, int n) {
  std::map<int, std::vector<const Vec*>> incident;
  for (const auto& g : groups)
    for (int v : g.verts) incident[v].push_back(&g.normal);
  std::vector<int> out;
  for (const auto& [v, normals] : incident) {
    if (static_cast<int>(normals.size()) < n) continue;
    Mat m(n, static_cast<Eigen::Index>(normals.size()));
    for (std::size_t k = 0; k < normals.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = *normals[k];
    Eigen::JacobiSVD<Mat> svd(m);
    if (svd.singularValues()(n - 1) > 1e-9) out.push_back(v);
  }
  return out;
}

}  // namespace

VPolytope VPolytope::hull(const PointList& points) {
  if (points.empty()) throw Error(Errc::DegenerateInput, "empty point set");
  const int n = static_cast<int>(points.front().size());
  if (n < 2 || n > kMaxDim)
    throw Error(Errc::InvalidArgument, "dimension must be in [2, " + std::to_string(kMaxDim) + "]");
  for (const auto& p : points) {
    if (p.size() != n) throw Error(Errc::InvalidArgument, "points of mixed dimension");
    if (!p.allFinite()) throw Error(Errc::InvalidArgument, "non-finite coordinate");
  }
  if (static_cast<int>(points.size()) < n + 1)
    throw Error(Errc::DegenerateInput, "need at least n+1 points");

  PointList pts = points;
  std::vector<RawFacet> raw;
  std::vector<MergedFacet> groups;
  // Points on the boundary but not extreme can enter the triangulation when
  // they are inserted before the face they lie on is complete; a second pass
  // over the extreme points alone removes them.
  for (int pass = 0; pass < 2; ++pass) {
    Vec interior;
    raw = incremental_hull(pts, n, interior);
    groups = merge_coplanar(pts, raw);
    std::vector<int> extreme = extreme_vertices(groups, n);
    std::vector<int> used;
    for (const auto& g : groups) used.insert(used.end(), g.verts.begin(), g.verts.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    if (extreme.size() == used.size() || pass == 1) break;
    PointList next;
    for (int v : extreme) next.push_back(pts[static_cast<std::size_t>(v)]);
    pts = std::move(next);
  }

  std::vector<int> used;
  for (const auto& g : groups) used.insert(used.end(), g.verts.begin(), g.verts.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::stable_sort(used.begin(), used.end(), [&](int a, int b) {
    return lex_less_snapped(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)]);
  });
  std::map<int, int> remap;
  VPolytope out;
  out.dim_ = n;
  for (int v : used) {
    remap[v] = static_cast<int>(out.vertices_.size());
    out.vertices_.push_back(pts[static_cast<std::size_t>(v)]);
  }

  std::sort(groups.begin(), groups.end(), [](const MergedFacet& a, const MergedFacet& b) {
    return lex_less_snapped(a.normal, b.normal);
  });
  for (const auto& g : groups) {
    Facet f;
    f.normal = g.normal;
    f.offset = g.offset;
    f.area = g.area;
    for (int v : g.verts) f.vertices.push_back(remap.at(v));
    std::sort(f.vertices.begin(), f.vertices.end());
    out.facets_.push_back(std::move(f));
    for (int m : g.members) {
      std::vector<int> s;
      for (int v : raw[static_cast<std::size_t>(m)].verts) s.push_back(remap.at(v));
      out.simplices_.push_back(std::move(s));
    }
  }
  return out;
}

VPolytope VPolytope::transformed(const Mat& linear, const Vec& shift) const {
  PointList pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(linear * v + shift);
  return hull(pts);
}

VPolytope VPolytope::translated(const Vec& shift) const {
  return transformed(Mat::Identity(dim_, dim_), shift);
}

VPolytope VPolytope::scaled(double factor) const {
  return transformed(factor * Mat::Identity(dim_, dim_), Vec::Zero(dim_));
}

bool VPolytope::contains(const Vec& x, double tol) const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Facet& f) { return f.normal.dot(x) <= f.offset + tol; });
}

HPolytope::HPolytope(int dim, std::vector<Halfspace> halfspaces)
    : dim_(dim), halfspaces_(std::move(halfspaces)) {
  if (dim < 2 || dim > kMaxDim) throw Error(Errc::InvalidArgument, "dimension out of range");
  PointList normals;
  for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
    const auto& h = halfspaces_[i];
    if (h.normal.size() != dim)
      throw Error(Errc::InvalidArgument, "halfspace " + std::to_string(i) + " has wrong dimension");
    if (std::abs(h.normal.norm() - 1.0) > 1e-12)
      throw Error(Errc::InvalidArgument, "halfspace " + std::to_string(i) + " normal is not unit");
    if (!(h.offset > 0.0))
      throw Error(Errc::OriginNotInterior, "halfspace " + std::to_string(i) + " has offset <= 0");
    normals.push_back(h.normal);
  }
  // Bounded iff the normals positively span Rⁿ, i.e. the origin is interior
  // to their convex hull.
  try {
    const VPolytope hull = VPolytope::hull(normals);
    for (const auto& f : hull.facets())
      if (f.offset <= 1e-12) throw Error(Errc::UnboundedBody, "normals do not positively span");
  } catch (const Error& e) {
    if (e.code() == Errc::DegenerateInput)
      throw Error(Errc::UnboundedBody, "normals do not span the space");
    throw;
  }
}

bool HPolytope::contains(const Vec& x, double tol) const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const Halfspace& h) { return h.normal.dot(x) <= h.offset + tol; });
}

HPolytope HPolytope::canonical() const { return vertices_to_halfspaces(halfspace_to_vertices(*this)); }

VPolytope convex_hull(const PointList& points, int dim) {
  for (const auto& p : points)
    if (p.size() != dim) throw Error(Errc::InvalidArgument, "point dimension mismatch");
  return VPolytope::hull(points);
}

VPolytope halfspace_to_vertices(const HPolytope& body) {
  PointList dual;
  for (const auto& h : body.halfspaces()) dual.push_back(h.normal / h.offset);
  VPolytope dual_hull = [&] {
    try {
      return VPolytope::hull(dual);
    } catch (const Error& e) {
      if (e.code() == Errc::DegenerateInput) throw Error(Errc::UnboundedBody, e.what());
      throw;
    }
  }();
  PointList verts;
  for (const auto& f : dual_hull.facets()) {
    if (f.offset <= 1e-14) throw Error(Errc::UnboundedBody, "origin not interior to dual hull");
    verts.push_back(f.normal / f.offset);
  }
  return VPolytope::hull(verts);
}

HPolytope vertices_to_halfspaces(const VPolytope& body) {
  std::vector<Halfspace> hs;
  for (const auto& f : body.facets()) {
    if (f.offset <= 0.0) throw Error(Errc::OriginNotInterior, "origin not strictly inside");
    hs.push_back({f.normal, f.offset});
  }
  return HPolytope(body.dim(), std::move(hs));
}

double volume(const VPolytope& body) {
  const int n = body.dim();
  Vec center = Vec::Zero(n);
  for (const auto& v : body.vertices()) center += v;
  center /= static_cast<double>(body.vertices().size());
  double total = 0.0;
  Mat m(n, n);
  for (const auto& s : body.boundary_simplices()) {
    for (int k = 0; k < n; ++k)
      m.col(k) = body.vertices()[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])] - center;
    total += std::abs(m.determinant());
  }
  return total / factorial(n);
}

Vec centroid(const VPolytope& body) {
  const int n = body.dim();
  Vec center = Vec::Zero(n);
  for (const auto& v : body.vertices()) center += v;
  center /= static_cast<double>(body.vertices().size());
  double total = 0.0;
  Vec moment = Vec::Zero(n);
  Mat m(n, n);
  for (const auto& s : body.boundary_simplices()) {
    Vec sum = center;
    for (int k = 0; k < n; ++k) {
      const Vec& v = body.vertices()[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])];
      m.col(k) = v - center;
      sum += v;
    }
    const double vol = std::abs(m.determinant());
    total += vol;
    moment += vol * sum / static_cast<double>(n + 1);
  }
  return moment / total;
}

VPolytope polar(const HPolytope& body) {
  PointList pts;
  for (const auto& h : body.halfspaces()) pts.push_back(h.normal / h.offset);
  return VPolytope::hull(pts);
}

HPolytope polar(const VPolytope& body) {
  for (const auto& f : body.facets())
    if (f.offset <= 0.0) throw Error(Errc::OriginNotInterior, "origin not strictly inside");
  std::vector<Halfspace> hs;
  for (const auto& v : body.vertices()) {
    const double r = v.norm();
    hs.push_back({v / r, 1.0 / r});
  }
  std::sort(hs.begin(), hs.end(),
            [](const Halfspace& a, const Halfspace& b) { return lex_less_snapped(a.normal, b.normal); });
  return HPolytope(body.dim(), std::move(hs));
}

std::vector<FacetData> surface_area_measure(const VPolytope& body) {
  std::vector<FacetData> out;
  out.reserve(body.facets().size());
  for (const auto& f : body.facets()) out.push_back({f.normal, f.area, f.offset});
  return out;
}

double support_function(const VPolytope& body, const Vec& direction) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : body.vertices()) best = std::max(best, direction.dot(v));
  return best;
}

bool same_body(const HPolytope& a, const HPolytope& b, double tol) {
  const HPolytope ca = a.canonical();
  const HPolytope cb = b.canonical();
  if (ca.dim() != cb.dim() || ca.size() != cb.size()) return false;
  std::vector<bool> taken(cb.size(), false);
  for (const auto& h : ca.halfspaces()) {
    bool found = false;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      const auto& g = cb.halfspaces()[j];
      if (!taken[j] && (h.normal - g.normal).norm() <= tol && std::abs(h.offset - g.offset) <= tol) {
        taken[j] = found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool same_body(const VPolytope& a, const VPolytope& b, double tol) {
  if (a.dim() != b.dim() || a.vertices().size() != b.vertices().size()) return false;
  std::vector<bool> taken(b.vertices().size(), false);
  for (const auto& v : a.vertices()) {
    bool found = false;
    for (std::size_t j = 0; j < b.vertices().size(); ++j)
      if (!taken[j] && (v - b.vertices()[j]).norm() <= tol) {
        taken[j] = found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace wulffkit::geom
