#pragma once

// Point process sampling, Delaunay/Voronoi construction, cooperation sets and
// UE placement.

#include <algorithm>
#include <array>
#include <cmath>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dcomp/errors.hpp"

namespace dcomp::geometry {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend Point2D operator+(Point2D a, Point2D b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2D operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2D operator*(double s, Point2D a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2D a, Point2D b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(Point2D a, Point2D b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

inline double dist2(Point2D a, Point2D b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}
inline double dist(Point2D a, Point2D b) { return std::sqrt(dist2(a, b)); }

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  static Rect centered_square(double side) { return {-side / 2, -side / 2, side / 2, side / 2}; }
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return std::max(0.0, width()) * std::max(0.0, height()); }
  double side() const { return std::max(width(), height()); }
  bool empty() const { return !(x1 > x0 && y1 > y0); }
  bool contains(Point2D p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  Rect shrunk(double m) const { return {x0 + m, y0 + m, x1 - m, y1 - m}; }
};

// ---------------------------------------------------------------------------
// Predicates: floating-point filter with an exact rational fallback.

namespace predicates {

namespace detail {
using Exact = boost::multiprecision::cpp_rational;
inline constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
inline constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
inline constexpr double kInCircleBound = (10.0 + 96.0 * kEps) * kEps;

inline int sign(const Exact& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
}  // namespace detail

inline int orient2d_exact(Point2D a, Point2D b, Point2D c) {
  using E = detail::Exact;
  const E acx = E(a.x) - E(c.x), bcx = E(b.x) - E(c.x);
  const E acy = E(a.y) - E(c.y), bcy = E(b.y) - E(c.y);
  return detail::sign(acx * bcy - acy * bcx);
}

// > 0 if a, b, c are counter-clockwise.
inline int orient2d(Point2D a, Point2D b, Point2D c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  double detsum;
  if (detleft > 0.0) {
    if (detright <= 0.0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
    detsum = detleft + detright;
  } else if (detleft < 0.0) {
    if (detright >= 0.0) return det > 0 ? 1 : (det < 0 ? -1 : 0);
    detsum = -detleft - detright;
  } else {
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
  }
  const double bound = detail::kOrientBound * detsum;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orient2d_exact(a, b, c);
}

inline int incircle_exact(Point2D a, Point2D b, Point2D c, Point2D d) {
  using E = detail::Exact;
  const E adx = E(a.x) - E(d.x), ady = E(a.y) - E(d.y);
  const E bdx = E(b.x) - E(d.x), bdy = E(b.y) - E(d.y);
  const E cdx = E(c.x) - E(d.x), cdy = E(c.y) - E(d.y);
  const E alift = adx * adx + ady * ady;
  const E blift = bdx * bdx + bdy * bdy;
  const E clift = cdx * cdx + cdy * cdy;
  return detail::sign(alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                      clift * (adx * bdy - bdx * ady));
}

// > 0 if d lies strictly inside the circle through counter-clockwise a, b, c.
inline int incircle(Point2D a, Point2D b, Point2D c, Point2D d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = detail::kInCircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return incircle_exact(a, b, c, d);
}

}  // namespace predicates

inline Point2D circumcenter(Point2D a, Point2D b, Point2D c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  return {a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
}

// ---------------------------------------------------------------------------

using Tri = std::array<int, 3>;

enum class UeType { TypeI, TypeII, TypeIII };

inline const char* to_string(UeType t) {
  switch (t) {
    case UeType::TypeI: return "TypeI";
    case UeType::TypeII: return "TypeII";
    case UeType::TypeIII: return "TypeIII";
  }
  return "?";
}

struct CoopSet {
  std::array<int, 3> bs_indices{};
  std::array<double, 3> distances{};
  UeType ue_type = UeType::TypeIII;
};

inline constexpr double kTypeTolerance = 1e-6;

inline UeType classify_ue(const std::array<double, 3>& d, double eps = kTypeTolerance) {
  auto eq = [eps](double u, double v) { return std::abs(u - v) <= eps * std::max(u, v); };
  const int pairs = int(eq(d[0], d[1])) + int(eq(d[1], d[2])) + int(eq(d[0], d[2]));
  if (pairs >= 2) return UeType::TypeI;
  if (pairs == 1) return UeType::TypeII;
  return UeType::TypeIII;
}

struct NetworkRealization {
  std::vector<Point2D> bs_points;
  Rect window;
  std::vector<Tri> triangles;     // counter-clockwise vertex triples
  std::vector<Tri> adjacency;     // adjacency[t][i]: triangle across the edge opposite vertex i, -1 on the hull
  std::vector<Point2D> circumcenters;
  std::vector<double> circumradii;
  double guard_margin = 0.0;
  std::size_t duplicate_points = 0;

  // Derived lookup structures.
  std::vector<Point2D> centroids;
  std::vector<int> eligible_triangles;                 // circumcenter and vertices inside interior()
  std::vector<std::pair<int, int>> eligible_edges;     // (triangle, local edge) with both sides eligible
  double cell_size = 0.0;
  int grid_nx = 0, grid_ny = 0;
  std::vector<int> cell_start;                         // CSR over triangle centroids
  std::vector<int> cell_items;

  Rect interior() const { return window.shrunk(guard_margin); }
  double eps_geo() const { return 1e-9 * window.side(); }
  std::size_t size() const { return bs_points.size(); }
};

// ---------------------------------------------------------------------------
// Bowyer-Watson with ghost triangles.

namespace detail {

inline std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y, int order) {
  const std::uint32_t n = 1u << order;
  std::uint64_t d = 0;
  for (std::uint32_t s = n / 2; s > 0; s /= 2) {
    const std::uint32_t rx = (x & s) > 0;
    const std::uint32_t ry = (y & s) > 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = n - 1 - x;
        y = n - 1 - y;
      }
      std::swap(x, y);
    }
  }
  return d;
}

inline std::vector<int> hilbert_order(const std::vector<Point2D>& pts) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (pts.size() < 3) return idx;
  double x0 = pts[0].x, x1 = x0, y0 = pts[0].y, y1 = y0;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  constexpr int kOrder = 16;
  const double span = std::max({x1 - x0, y1 - y0, 1e-300});
  const double scale = ((1u << kOrder) - 1) / span;
  std::vector<std::uint64_t> key(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    key[i] = hilbert_index(static_cast<std::uint32_t>((pts[i].x - x0) * scale),
                           static_cast<std::uint32_t>((pts[i].y - y0) * scale), kOrder);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key[a] < key[b]; });
  return idx;
}

class BowyerWatson {
 public:
  static constexpr int kGhost = -1;

  explicit BowyerWatson(const std::vector<Point2D>& pts) : pts_(pts) {}

  // Returns the number of duplicate points skipped.
  std::size_t run() {
    const std::vector<int> order = hilbert_order(pts_);
    if (order.size() < 3) throw DegenerateInputError("delaunay_triangulate: need at least 3 points");
    const int a = order[0];
    int b = -1;
    std::size_t bpos = 0;
    for (std::size_t i = 1; i < order.size(); ++i)
      if (!(pts_[order[i]] == pts_[a])) {
        b = order[i];
        bpos = i;
        break;
      }
    if (b < 0) throw DegenerateInputError("delaunay_triangulate: all points coincide");
    int c = -1;
    std::size_t cpos = 0;
    for (std::size_t i = bpos + 1; i < order.size(); ++i)
      if (predicates::orient2d(pts_[a], pts_[b], pts_[order[i]]) != 0) {
        c = order[i];
        cpos = i;
        break;
      }
    if (c < 0) throw DegenerateInputError("delaunay_triangulate: all points are collinear");
    init(a, b, c);
    std::size_t dups = 0;
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (i == bpos || i == cpos) continue;
      if (!insert(order[i])) ++dups;
    }
    return dups;
  }

  // Live real triangles.
  std::vector<Tri> triangles() const {
    std::vector<Tri> out;
    for (std::size_t t = 0; t < v_.size(); ++t)
      if (alive_[t] && v_[t][2] != kGhost) out.push_back(v_[t]);
    return out;
  }

 private:
  const std::vector<Point2D>& pts_;
  std::vector<Tri> v_;
  std::vector<Tri> nb_;
  std::vector<char> alive_;
  std::vector<int> free_;
  std::vector<int> mark_;
  int stamp_ = 0;
  int last_ = 0;

  // scratch
  std::vector<int> cavity_;
  std::vector<int> stack_;
  struct Boundary {
    int u, w, outside;
  };
  std::vector<Boundary> boundary_;
  std::vector<int> created_;

  bool is_ghost(int t) const { return v_[t][2] == kGhost; }

  int alloc(const Tri& v, const Tri& nb) {
    int t;
    if (!free_.empty()) {
      t = free_.back();
      free_.pop_back();
      v_[t] = v;
      nb_[t] = nb;
      alive_[t] = 1;
      mark_[t] = 0;
    } else {
      t = static_cast<int>(v_.size());
      v_.push_back(v);
      nb_.push_back(nb);
      alive_.push_back(1);
      mark_.push_back(0);
    }
    return t;
  }

  // Rotates so that the ghost vertex, if any, sits in slot 2.
  static void normalize(Tri& v, Tri& nb) {
    for (int r = 0; r < 2 && (v[0] == kGhost || v[1] == kGhost); ++r) {
      v = {v[1], v[2], v[0]};
      nb = {nb[1], nb[2], nb[0]};
    }
  }

  static int opposite_slot(const Tri& v, int u, int w) {
    for (int k = 0; k < 3; ++k)
      if (v[k] != u && v[k] != w) return k;
    return -1;
  }

  void init(int a, int b, int c) {
    if (predicates::orient2d(pts_[a], pts_[b], pts_[c]) < 0) std::swap(b, c);
    const int t0 = alloc({a, b, c}, {-1, -1, -1});
    const int g_bc = alloc({c, b, kGhost}, {-1, -1, t0});
    const int g_ca = alloc({a, c, kGhost}, {-1, -1, t0});
    const int g_ab = alloc({b, a, kGhost}, {-1, -1, t0});
    nb_[t0] = {g_bc, g_ca, g_ab};
    // ghost (c,b,g): opposite c is edge (b,g) shared with (b,a,g); opposite b is (g,c) shared with (a,c,g)
    nb_[g_bc][0] = g_ab;
    nb_[g_bc][1] = g_ca;
    nb_[g_ca][0] = g_bc;
    nb_[g_ca][1] = g_ab;
    nb_[g_ab][0] = g_ca;
    nb_[g_ab][1] = g_bc;
    last_ = t0;
  }

  bool in_conflict(int t, int p) const {
    const Tri& v = v_[t];
    const Point2D& q = pts_[p];
    if (v[2] == kGhost) {
      const Point2D& u = pts_[v[0]];
      const Point2D& w = pts_[v[1]];
      const int o = predicates::orient2d(u, w, q);
      if (o > 0) return true;
      if (o < 0) return false;
      // Collinear: conflict only strictly inside the hull edge.
      const double t1 = (q.x - u.x) * (w.x - u.x) + (q.y - u.y) * (w.y - u.y);
      const double len2 = dist2(u, w);
      return t1 > 0.0 && t1 < len2;
    }
    return predicates::incircle(pts_[v[0]], pts_[v[1]], pts_[v[2]], q) > 0;
  }

  // Visibility walk towards p; ends in a triangle in conflict with p, or returns -2 for a duplicate.
  int locate(int p) const {
    const Point2D& q = pts_[p];
    int t = last_;
    if (!alive_[t]) t = 0;
    while (!alive_[t]) ++t;
    if (is_ghost(t)) t = nb_[t][2];
    const std::size_t cap = 4 * v_.size() + 16;
    for (std::size_t step = 0; step < cap; ++step) {
      if (is_ghost(t)) return t;
      const Tri& v = v_[t];
      int next = -1;
      for (int k = 0; k < 3; ++k) {
        const Point2D& u = pts_[v[(k + 1) % 3]];
        const Point2D& w = pts_[v[(k + 2) % 3]];
        if (predicates::orient2d(u, w, q) < 0) {
          next = nb_[t][k];
          break;
        }
      }
      if (next < 0) {
        for (int k = 0; k < 3; ++k)
          if (pts_[v[k]] == q) return -2;
        return t;
      }
      t = next;
    }
    // Fallback: linear scan.
    for (std::size_t s = 0; s < v_.size(); ++s) {
      const int tt = static_cast<int>(s);
      if (!alive_[tt]) continue;
      if (!is_ghost(tt))
        for (int k = 0; k < 3; ++k)
          if (pts_[v_[tt][k]] == q) return -2;
      if (in_conflict(tt, p)) return tt;
    }
    throw NumericalError("delaunay_triangulate: point location failed");
  }

  bool insert(int p) {
    int seed = locate(p);
    if (seed == -2) return false;
    if (!in_conflict(seed, p)) {
      // Can only happen for a ghost reached at a collinear hull extension; search neighbours.
      bool found = false;
      for (std::size_t s = 0; s < v_.size() && !found; ++s)
        if (alive_[s] && in_conflict(static_cast<int>(s), p)) {
          seed = static_cast<int>(s);
          found = true;
        }
      if (!found) throw NumericalError("delaunay_triangulate: no conflicting triangle");
    }
    ++stamp_;
    cavity_.clear();
    boundary_.clear();
    stack_.assign(1, seed);
    mark_[seed] = stamp_;
    while (!stack_.empty()) {
      const int t = stack_.back();
      stack_.pop_back();
      cavity_.push_back(t);
      for (int k = 0; k < 3; ++k) {
        const int n = nb_[t][k];
        if (mark_[n] == stamp_) continue;
        if (in_conflict(n, p)) {
          mark_[n] = stamp_;
          stack_.push_back(n);
        }
      }
    }
    for (int t : cavity_) {
      for (int k = 0; k < 3; ++k) {
        const int n = nb_[t][k];
        if (mark_[n] == stamp_) continue;
        boundary_.push_back({v_[t][(k + 1) % 3], v_[t][(k + 2) % 3], n});
      }
    }
    for (int t : cavity_) {
      alive_[t] = 0;
      free_.push_back(t);
    }
    created_.clear();
    for (const auto& e : boundary_) {
      Tri v{e.u, e.w, p};
      Tri nb{-1, -1, e.outside};
      normalize(v, nb);
      const int t = alloc(v, nb);
      mark_[t] = 0;
      created_.push_back(t);
      const int slot = opposite_slot(v_[e.outside], e.u, e.w);
      nb_[e.outside][slot] = t;
    }
    // Stitch new triangles around p: the edge (w,p) of (u,w,p) meets the new triangle starting at w.
    for (std::size_t i = 0; i < boundary_.size(); ++i) {
      const int t = created_[i];
      const int u = boundary_[i].u;
      const int w = boundary_[i].w;
      for (std::size_t j = 0; j < boundary_.size(); ++j) {
        if (boundary_[j].u == w) nb_[t][opposite_slot(v_[t], w, p)] = created_[j];
        if (boundary_[j].w == u) nb_[t][opposite_slot(v_[t], p, u)] = created_[j];
      }
    }
    last_ = created_.front();
    for (int t : created_)
      if (!is_ghost(t)) {
        last_ = t;
        break;
      }
    return true;
  }
};

inline std::vector<Tri> build_adjacency(const std::vector<Tri>& tris, std::size_t npts) {
  // Edge lookup keyed by the smaller endpoint.
  std::vector<std::vector<std::pair<int, int>>> by_vertex(npts);  // (other vertex, tri*3+slot)
  std::vector<Tri> adj(tris.size(), Tri{-1, -1, -1});
  for (std::size_t t = 0; t < tris.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      int u = tris[t][(k + 1) % 3], w = tris[t][(k + 2) % 3];
      if (u > w) std::swap(u, w);
      auto& list = by_vertex[u];
      auto it = std::find_if(list.begin(), list.end(), [w](const auto& e) { return e.first == w; });
      if (it == list.end()) {
        list.emplace_back(w, static_cast<int>(t) * 3 + k);
      } else {
        const int ot = it->second / 3, ok = it->second % 3;
        adj[t][k] = ot;
        adj[ot][ok] = static_cast<int>(t);
        list.erase(it);
      }
    }
  }
  return adj;
}

// Flips exactly cocircular quadrilaterals to the lexicographically smallest diagonal.
inline void cocircular_tie_break(const std::vector<Point2D>& pts, std::vector<Tri>& tris) {
  auto key = [&](int a, int b) {
    Point2D pa = pts[a], pb = pts[b];
    if (pb < pa) std::swap(pa, pb);
    return std::array<double, 4>{pa.x, pa.y, pb.x, pb.y};
  };
  for (int pass = 0; pass < 1000; ++pass) {
    const auto adj = build_adjacency(tris, pts.size());
    std::vector<char> touched(tris.size(), 0);
    bool flipped = false;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (touched[t]) continue;
      for (int k = 0; k < 3 && !touched[t]; ++k) {
        const int n = adj[t][k];
        if (n < 0 || touched[n]) continue;
        const int a = tris[t][k], b = tris[t][(k + 1) % 3], c = tris[t][(k + 2) % 3];
        int d = -1;
        for (int j = 0; j < 3; ++j)
          if (tris[n][j] != b && tris[n][j] != c) d = tris[n][j];
        if (predicates::incircle(pts[a], pts[b], pts[c], pts[d]) != 0) continue;
        if (!(key(a, d) < key(b, c))) continue;
        tris[t] = {a, b, d};
        tris[n] = {a, d, c};
        touched[t] = touched[n] = 1;
        flipped = true;
      }
    }
    if (!flipped) return;
  }
}

}  // namespace detail

// Fills derived fields (circumcenters, centroids, grid, eligibility).
inline void annotate(NetworkRealization& net) {
  const auto& P = net.bs_points;
  const std::size_t T = net.triangles.size();
  net.circumcenters.resize(T);
  net.circumradii.resize(T);
  net.centroids.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    const auto& v = net.triangles[t];
    net.circumcenters[t] = circumcenter(P[v[0]], P[v[1]], P[v[2]]);
    net.circumradii[t] = dist(net.circumcenters[t], P[v[0]]);
    net.centroids[t] = {(P[v[0]].x + P[v[1]].x + P[v[2]].x) / 3.0, (P[v[0]].y + P[v[1]].y + P[v[2]].y) / 3.0};
  }

  const Rect& W = net.window;
  const double cells_target = std::max<double>(1.0, T / 2.0);
  net.cell_size = std::max(std::sqrt(W.area() / cells_target), 1e-9 * std::max(W.side(), 1.0));
  net.grid_nx = std::max(1, static_cast<int>(std::ceil(W.width() / net.cell_size)));
  net.grid_ny = std::max(1, static_cast<int>(std::ceil(W.height() / net.cell_size)));
  const std::size_t ncell = static_cast<std::size_t>(net.grid_nx) * net.grid_ny;
  auto cell_of = [&](Point2D p) {
    int cx = std::clamp(static_cast<int>((p.x - W.x0) / net.cell_size), 0, net.grid_nx - 1);
    int cy = std::clamp(static_cast<int>((p.y - W.y0) / net.cell_size), 0, net.grid_ny - 1);
    return static_cast<std::size_t>(cy) * net.grid_nx + cx;
  };
  net.cell_start.assign(ncell + 1, 0);
  for (const auto& c : net.centroids) ++net.cell_start[cell_of(c) + 1];
  for (std::size_t i = 0; i < ncell; ++i) net.cell_start[i + 1] += net.cell_start[i];
  net.cell_items.assign(T, 0);
  std::vector<int> fill(net.cell_start.begin(), net.cell_start.end() - 1);
  for (std::size_t t = 0; t < T; ++t) net.cell_items[fill[cell_of(net.centroids[t])]++] = static_cast<int>(t);

  const Rect inner = net.interior();
  net.eligible_triangles.clear();
  std::vector<char> ok(T, 0);
  for (std::size_t t = 0; t < T; ++t) {
    const auto& v = net.triangles[t];
    if (inner.contains(net.circumcenters[t]) && inner.contains(P[v[0]]) && inner.contains(P[v[1]]) &&
        inner.contains(P[v[2]])) {
      ok[t] = 1;
      net.eligible_triangles.push_back(static_cast<int>(t));
    }
  }
  net.eligible_edges.clear();
  for (std::size_t t = 0; t < T; ++t)
    for (int k = 0; k < 3; ++k) {
      const int n = net.adjacency[t][k];
      if (n > static_cast<int>(t) && ok[t] && ok[n]) net.eligible_edges.emplace_back(static_cast<int>(t), k);
    }
}

// Delaunay triangulation of the points. The window defaults to the bounding box.
inline NetworkRealization delaunay_triangulate(std::vector<Point2D> points) {
  for (const auto& p : points)
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("delaunay_triangulate: non-finite point");
  if (points.size() < 3) throw DegenerateInputError("delaunay_triangulate: need at least 3 points");
  NetworkRealization net;
  detail::BowyerWatson bw(points);
  net.duplicate_points = bw.run();
  net.triangles = bw.triangles();
  detail::cocircular_tie_break(points, net.triangles);
  net.adjacency = detail::build_adjacency(net.triangles, points.size());
  Rect box{points[0].x, points[0].y, points[0].x, points[0].y};
  for (const auto& p : points) {
    box.x0 = std::min(box.x0, p.x);
    box.y0 = std::min(box.y0, p.y);
    box.x1 = std::max(box.x1, p.x);
    box.y1 = std::max(box.y1, p.y);
  }
  net.bs_points = std::move(points);
  net.window = box;
  annotate(net);
  return net;
}

inline NetworkRealization make_network(std::vector<Point2D> points, const Rect& window, double guard_margin) {
  NetworkRealization net = delaunay_triangulate(std::move(points));
  net.window = window;
  net.guard_margin = guard_margin;
  annotate(net);
  return net;
}

inline std::vector<Point2D> sample_ppp(double intensity, const Rect& window, std::uint64_t seed) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) throw DomainError("sample_ppp: intensity must be positive");
  if (window.empty()) throw DomainError("sample_ppp: window area must be positive");
  const double mean = intensity * window.area();
  if (mean > 1e7) throw CapacityError("sample_ppp: expected point count exceeds 1e7");
  std::mt19937_64 rng(seed);
  std::poisson_distribution<long long> count(mean);
  const long long n = count(rng);
  std::uniform_real_distribution<double> ux(window.x0, window.x1), uy(window.y0, window.y1);
  std::vector<Point2D> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p.x = ux(rng);
    p.y = uy(rng);
  }
  return pts;
}

// ---------------------------------------------------------------------------
// Voronoi dual.

struct VoronoiDual {
  struct Edge {
    int v0, v1;      // Voronoi vertices (triangle ids); v1 = -1 for an unbounded ray
    int bs_a, bs_b;  // generators separated by the edge
  };
  std::vector<Point2D> vertices;
  std::vector<double> radii;
  std::vector<std::array<int, 3>> generators;
  std::vector<Edge> edges;
};

inline VoronoiDual voronoi_dual(const NetworkRealization& net) {
  VoronoiDual vd;
  vd.vertices = net.circumcenters;
  vd.radii = net.circumradii;
  vd.generators = net.triangles;
  for (std::size_t t = 0; t < net.triangles.size(); ++t)
    for (int k = 0; k < 3; ++k) {
      const int n = net.adjacency[t][k];
      if (n >= 0 && n < static_cast<int>(t)) continue;
      vd.edges.push_back({static_cast<int>(t), n, net.triangles[t][(k + 1) % 3], net.triangles[t][(k + 2) % 3]});
    }
  return vd;
}

// ---------------------------------------------------------------------------
// Point location and cooperation sets.

inline bool triangle_contains(const NetworkRealization& net, int t, Point2D p) {
  const auto& v = net.triangles[t];
  const auto& P = net.bs_points;
  for (int k = 0; k < 3; ++k)
    if (predicates::orient2d(P[v[(k + 1) % 3]], P[v[(k + 2) % 3]], p) < 0) return false;
  return true;
}

// Triangle containing p (closed), or -1 outside the hull.
inline int locate(const NetworkRealization& net, Point2D p) {
  if (net.triangles.empty()) return -1;
  const Rect& W = net.window;
  const int cx = std::clamp(static_cast<int>((p.x - W.x0) / net.cell_size), 0, net.grid_nx - 1);
  const int cy = std::clamp(static_cast<int>((p.y - W.y0) / net.cell_size), 0, net.grid_ny - 1);
  int start = -1;
  for (int r = 0; start < 0 && r <= std::max(net.grid_nx, net.grid_ny); ++r) {
    for (int y = cy - r; y <= cy + r && start < 0; ++y)
      for (int x = cx - r; x <= cx + r && start < 0; ++x) {
        if (x < 0 || y < 0 || x >= net.grid_nx || y >= net.grid_ny) continue;
        if (std::max(std::abs(x - cx), std::abs(y - cy)) != r) continue;
        const std::size_t c = static_cast<std::size_t>(y) * net.grid_nx + x;
        if (net.cell_start[c] < net.cell_start[c + 1]) start = net.cell_items[net.cell_start[c]];
      }
  }
  if (start < 0) start = 0;
  const auto& P = net.bs_points;
  int t = start;
  const std::size_t cap = 4 * net.triangles.size() + 16;
  for (std::size_t step = 0; step < cap; ++step) {
    const auto& v = net.triangles[t];
    int next = -2;
    for (int k = 0; k < 3; ++k)
      if (predicates::orient2d(P[v[(k + 1) % 3]], P[v[(k + 2) % 3]], p) < 0) {
        next = net.adjacency[t][k];
        break;
      }
    if (next == -2) return t;
    if (next == -1) return -1;
    t = next;
  }
  for (std::size_t s = 0; s < net.triangles.size(); ++s)
    if (triangle_contains(net, static_cast<int>(s), p)) return static_cast<int>(s);
  return -1;
}

inline CoopSet make_coop(const NetworkRealization& net, Point2D ue, std::array<int, 3> idx) {
  CoopSet cs;
  cs.bs_indices = idx;
  for (int k = 0; k < 3; ++k) cs.distances[k] = dist(ue, net.bs_points[idx[k]]);
  cs.ue_type = classify_ue(cs.distances);
  return cs;
}

inline CoopSet coop_set_for(Point2D ue, const NetworkRealization& net) {
  if (!net.interior().contains(ue)) throw OutOfCoverageError("coop_set_for: UE outside the guarded window");
  const int t = locate(net, ue);
  if (t < 0) throw OutOfCoverageError("coop_set_for: UE outside the convex hull");
  const auto& v = net.triangles[t];
  const auto& P = net.bs_points;
  const double eps = net.eps_geo();
  for (int k = 0; k < 3; ++k)
    if (dist(P[v[k]], ue) <= eps) return make_coop(net, ue, v);
  for (int k = 0; k < 3; ++k) {
    const Point2D a = P[v[(k + 1) % 3]], b = P[v[(k + 2) % 3]];
    const double len = dist(a, b);
    const double cross = (b.x - a.x) * (ue.y - a.y) - (b.y - a.y) * (ue.x - a.x);
    if (std::abs(cross) / len > eps) continue;
    const int n = net.adjacency[t][k];
    if (n < 0) break;
    int e = -1;
    for (int j = 0; j < 3; ++j)
      if (net.triangles[n][j] != v[(k + 1) % 3] && net.triangles[n][j] != v[(k + 2) % 3]) e = net.triangles[n][j];
    const double dc = dist(ue, P[v[k]]), de = dist(ue, P[e]);
    const int pick = (de < dc || (de == dc && e < v[k])) ? e : v[k];
    return make_coop(net, ue, {v[(k + 1) % 3], v[(k + 2) % 3], pick});
  }
  return make_coop(net, ue, v);
}

// Indices of the k nearest BSs, nearest first (exhaustive).
inline std::vector<int> nearest_k(const NetworkRealization& net, Point2D p, std::size_t k) {
  const auto& P = net.bs_points;
  k = std::min(k, P.size());
  std::vector<std::pair<double, int>> d(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) d[i] = {dist2(p, P[i]), static_cast<int>(i)};
  std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
  std::vector<int> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = d[i].second;
  return out;
}

// ---------------------------------------------------------------------------
// UE placement.

struct PlacementOptions {
  bool exclude_obtuse = false;
  int max_attempts = 10000;
};

struct Placement {
  Point2D ue;
  CoopSet coop;
};

namespace detail {

inline bool is_obtuse(const NetworkRealization& net, int t) {
  const auto& v = net.triangles[t];
  const auto& P = net.bs_points;
  for (int k = 0; k < 3; ++k) {
    const Point2D a = P[v[k]], b = P[v[(k + 1) % 3]], c = P[v[(k + 2) % 3]];
    if ((b.x - a.x) * (c.x - a.x) + (b.y - a.y) * (c.y - a.y) < 0.0) return true;
  }
  return false;
}

// Largest s > 0 with o + s*dir still inside triangle t.
inline double exit_parameter(const NetworkRealization& net, int t, Point2D o, Point2D dir) {
  const auto& v = net.triangles[t];
  const auto& P = net.bs_points;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    const Point2D a = P[v[(k + 1) % 3]], b = P[v[(k + 2) % 3]];
    const Point2D e = b - a;
    const double den = dir.x * e.y - dir.y * e.x;
    if (den == 0.0) continue;
    const Point2D ao = a - o;
    const double s = (ao.x * e.y - ao.y * e.x) / den;
    const double r = (ao.x * dir.y - ao.y * dir.x) / den;
    if (s > 1e-12 && r >= -1e-12 && r <= 1.0 + 1e-12) best = std::min(best, s);
  }
  return std::isfinite(best) ? best : 0.0;
}

template <class Rng>
int pick_triangle(const NetworkRealization& net, Rng& rng, bool exclude_obtuse) {
  const auto& el = net.eligible_triangles;
  if (el.empty()) throw PlacementError("place_typical_ue: no eligible triangle inside the guarded window");
  std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
  for (int tries = 0; tries < 100000; ++tries) {
    const int t = el[pick(rng)];
    if (!exclude_obtuse || !is_obtuse(net, t)) return t;
  }
  throw PlacementError("place_typical_ue: no eligible non-obtuse triangle");
}

}  // namespace detail

// Type II segment on the bisector of interior edge (t, k), clipped to the two adjoining triangles.
inline std::pair<Point2D, Point2D> bisector_segment(const NetworkRealization& net, int t, int k) {
  const auto& v = net.triangles[t];
  const auto& P = net.bs_points;
  const Point2D a = P[v[(k + 1) % 3]], b = P[v[(k + 2) % 3]];
  const Point2D m = 0.5 * (a + b);
  const double len = dist(a, b);
  // Inward normal of edge a->b in a counter-clockwise triangle points toward v[k].
  const Point2D n{-(b.y - a.y) / len, (b.x - a.x) / len};
  const int other = net.adjacency[t][k];
  const double s1 = detail::exit_parameter(net, t, m, n);
  const double s2 = other >= 0 ? detail::exit_parameter(net, other, m, -1.0 * n) : 0.0;
  return {m + s1 * n, m - s2 * n};
}

template <class Rng>
Placement place_typical_ue(const NetworkRealization& net, UeType type, Rng& rng, const PlacementOptions& opt = {}) {
  const Rect inner = net.interior();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    switch (type) {
      case UeType::TypeI: {
        const int t = detail::pick_triangle(net, rng, opt.exclude_obtuse);
        const Point2D ue = net.circumcenters[t];
        CoopSet cs = make_coop(net, ue, net.triangles[t]);
        cs.ue_type = UeType::TypeI;
        return {ue, cs};
      }
      case UeType::TypeII: {
        if (net.eligible_edges.empty()) throw PlacementError("place_typical_ue: no eligible interior edge");
        std::uniform_int_distribution<std::size_t> pick(0, net.eligible_edges.size() - 1);
        const auto [t, k] = net.eligible_edges[pick(rng)];
        const auto [p, q] = bisector_segment(net, t, k);
        const double s = unit(rng);
        const Point2D ue{p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)};
        if (!inner.contains(ue)) continue;
        CoopSet cs = coop_set_for(ue, net);
        if (cs.ue_type != UeType::TypeII) continue;
        return {ue, cs};
      }
      case UeType::TypeIII: {
        const int t = detail::pick_triangle(net, rng, opt.exclude_obtuse);
        const auto& v = net.triangles[t];
        const auto& P = net.bs_points;
        const double r1 = std::sqrt(unit(rng)), r2 = unit(rng);
        const Point2D ue = (1.0 - r1) * P[v[0]] + (r1 * (1.0 - r2)) * P[v[1]] + (r1 * r2) * P[v[2]];
        if (!inner.contains(ue)) continue;
        CoopSet cs = make_coop(net, ue, v);
        if (cs.ue_type != UeType::TypeIII) continue;
        return {ue, cs};
      }
    }
  }
  throw PlacementError("place_typical_ue: rejection sampling exhausted");
}

// Voronoi-based placement for the no-cooperation baseline: Type I at a Voronoi vertex,
// Type II uniform on a Voronoi edge, Type III uniform in the guarded window.
template <class Rng>
Point2D place_voronoi_ue(const NetworkRealization& net, UeType type, Rng& rng, int max_attempts = 10000) {
  const Rect inner = net.interior();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    switch (type) {
      case UeType::TypeI:
        return net.circumcenters[detail::pick_triangle(net, rng, false)];
      case UeType::TypeII: {
        if (net.eligible_edges.empty()) throw PlacementError("place_voronoi_ue: no eligible Voronoi edge");
        std::uniform_int_distribution<std::size_t> pick(0, net.eligible_edges.size() - 1);
        const auto [t, k] = net.eligible_edges[pick(rng)];
        const Point2D a = net.circumcenters[t], b = net.circumcenters[net.adjacency[t][k]];
        const double s = unit(rng);
        const Point2D ue{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
        if (inner.contains(ue)) return ue;
        break;
      }
      case UeType::TypeIII:
        return {inner.x0 + unit(rng) * inner.width(), inner.y0 + unit(rng) * inner.height()};
    }
  }
  throw PlacementError("place_voronoi_ue: rejection sampling exhausted");
}

// ---------------------------------------------------------------------------
// Interferer grouping.

struct InterfererGroups {
  std::vector<std::array<int, 3>> triples;
  std::vector<int> singles;
};

// Greedy grouping of all BSs outside `excluded` into Delaunay triangles, taken by
// increasing centroid distance to the UE. Only triangles whose centroid lies within
// max_radius are considered; everything left over becomes a singleton.
inline InterfererGroups partition_interferers(const NetworkRealization& net, Point2D ue,
                                              const std::vector<int>& excluded,
                                              double max_radius = std::numeric_limits<double>::infinity()) {
  const std::size_t n = net.bs_points.size();
  thread_local std::vector<std::uint32_t> used;
  thread_local std::uint32_t generation = 0;
  if (used.size() < n) used.assign(n, 0);
  if (++generation == 0) {
    std::fill(used.begin(), used.end(), 0);
    generation = 1;
  }
  for (int e : excluded) used[e] = generation;

  std::vector<std::pair<double, int>> cand;
  if (!std::isfinite(max_radius)) {
    cand.reserve(net.triangles.size());
    for (std::size_t t = 0; t < net.triangles.size(); ++t)
      cand.emplace_back(dist2(ue, net.centroids[t]), static_cast<int>(t));
  } else {
    const Rect& W = net.window;
    const double r2 = max_radius * max_radius;
    const int x0 = std::clamp(static_cast<int>((ue.x - max_radius - W.x0) / net.cell_size), 0, net.grid_nx - 1);
    const int x1 = std::clamp(static_cast<int>((ue.x + max_radius - W.x0) / net.cell_size), 0, net.grid_nx - 1);
    const int y0 = std::clamp(static_cast<int>((ue.y - max_radius - W.y0) / net.cell_size), 0, net.grid_ny - 1);
    const int y1 = std::clamp(static_cast<int>((ue.y + max_radius - W.y0) / net.cell_size), 0, net.grid_ny - 1);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        const std::size_t c = static_cast<std::size_t>(y) * net.grid_nx + x;
        for (int i = net.cell_start[c]; i < net.cell_start[c + 1]; ++i) {
          const int t = net.cell_items[i];
          const double d2 = dist2(ue, net.centroids[t]);
          if (d2 <= r2) cand.emplace_back(d2, t);
        }
      }
  }
  std::sort(cand.begin(), cand.end());

  InterfererGroups g;
  for (const auto& [d2, t] : cand) {
    const auto& v = net.triangles[t];
    if (used[v[0]] == generation || used[v[1]] == generation || used[v[2]] == generation) continue;
    used[v[0]] = used[v[1]] = used[v[2]] = generation;
    g.triples.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (used[i] != generation) g.singles.push_back(static_cast<int>(i));
  return g;
}

// ---------------------------------------------------------------------------
// CSV ingestion: header row "x,y", then one BS per line.

inline std::vector<Point2D> read_bs_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("read_bs_csv: empty input");
  auto strip = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    return s;
  };
  if (strip(line) != "x,y") throw DomainError("read_bs_csv: header must be x,y");
  std::vector<Point2D> pts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw DomainError("read_bs_csv: line " + std::to_string(lineno) + " has no comma");
    try {
      std::size_t used = 0;
      const double x = std::stod(s.substr(0, comma), &used);
      const double y = std::stod(s.substr(comma + 1));
      pts.push_back({x, y});
    } catch (const std::exception&) {
      throw DomainError("read_bs_csv: bad number on line " + std::to_string(lineno));
    }
  }
  return pts;
}

inline std::vector<Point2D> read_bs_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("read_bs_csv: cannot open " + path);
  return read_bs_csv(f);
}

}  // namespace dcomp::geometry
