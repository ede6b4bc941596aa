#include "ttp/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>

#include "ttp/errors.hpp"

namespace ttp {

namespace {

constexpr double kPredicateTol = 1e-10;

struct Triangle {
    int a, b, c;        // vertex ids (1..n real cities, n+1..n+3 super-triangle)
    double cx, cy, r2;  // circumcircle
    bool alive = true;
};

struct DegenerateGeometry {};

// Circumcircle of three points; throws on (near-)collinear input.
void circumcircle(const std::vector<Point>& pts, int a, int b, int c, double& cx, double& cy,
                  double& r2) {
    const Point& pa = pts[static_cast<size_t>(a)];
    const Point& pb = pts[static_cast<size_t>(b)];
    const Point& pc = pts[static_cast<size_t>(c)];
    double bx = pb.x - pa.x, by = pb.y - pa.y;
    double cx0 = pc.x - pa.x, cy0 = pc.y - pa.y;
    double d = 2.0 * (bx * cy0 - by * cx0);
    double scale = std::max({std::abs(bx), std::abs(by), std::abs(cx0), std::abs(cy0), 1.0});
    if (std::abs(d) <= kPredicateTol * scale * scale) throw DegenerateGeometry{};
    double b2 = bx * bx + by * by;
    double c2 = cx0 * cx0 + cy0 * cy0;
    double ux = (cy0 * b2 - by * c2) / d;
    double uy = (bx * c2 - cx0 * b2) / d;
    cx = pa.x + ux;
    cy = pa.y + uy;
    r2 = ux * ux + uy * uy;
}

std::vector<std::vector<int>> delaunay_adjacency(const Instance& inst) {
    const int n = inst.num_cities();
    if (n < 3) throw DegenerateGeometry{};

    std::vector<Point> pts(static_cast<size_t>(n) + 4);
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (int i = 1; i <= n; ++i) {
        pts[static_cast<size_t>(i)] = inst.coord(i);
        min_x = std::min(min_x, pts[static_cast<size_t>(i)].x);
        max_x = std::max(max_x, pts[static_cast<size_t>(i)].x);
        min_y = std::min(min_y, pts[static_cast<size_t>(i)].y);
        max_y = std::max(max_y, pts[static_cast<size_t>(i)].y);
    }
    double span = std::max({max_x - min_x, max_y - min_y, 1.0});
    double mx = (min_x + max_x) / 2, my = (min_y + max_y) / 2;
    pts[static_cast<size_t>(n + 1)] = Point{mx - 20 * span, my - 10 * span};
    pts[static_cast<size_t>(n + 2)] = Point{mx + 20 * span, my - 10 * span};
    pts[static_cast<size_t>(n + 3)] = Point{mx, my + 20 * span};

    std::vector<Triangle> tris;
    {
        Triangle t{n + 1, n + 2, n + 3, 0, 0, 0, true};
        circumcircle(pts, t.a, t.b, t.c, t.cx, t.cy, t.r2);
        tris.push_back(t);
    }

    std::vector<std::pair<int, int>> cavity;  // boundary edges of removed triangles
    for (int p = 1; p <= n; ++p) {
        cavity.clear();
        const Point& q = pts[static_cast<size_t>(p)];
        bool found = false;
        for (Triangle& t : tris) {
            if (!t.alive) continue;
            double dx = q.x - t.cx, dy = q.y - t.cy;
            if (dx * dx + dy * dy <= t.r2 * (1.0 + kPredicateTol)) {
                t.alive = false;
                found = true;
                int vs[3] = {t.a, t.b, t.c};
                for (int e = 0; e < 3; ++e) {
                    int u = vs[e], v = vs[(e + 1) % 3];
                    auto rev = std::find(cavity.begin(), cavity.end(), std::make_pair(v, u));
                    if (rev != cavity.end()) {
                        cavity.erase(rev);  // interior edge, shared by two removed triangles
                    } else {
                        if (std::find(cavity.begin(), cavity.end(), std::make_pair(u, v)) !=
                            cavity.end())
                            throw DegenerateGeometry{};  // non-manifold cavity
                        cavity.emplace_back(u, v);
                    }
                }
            }
        }
        if (!found || cavity.empty()) throw DegenerateGeometry{};
        for (auto [u, v] : cavity) {
            if (u == p || v == p) throw DegenerateGeometry{};  // duplicate point
            Triangle t{u, v, p, 0, 0, 0, true};
            circumcircle(pts, t.a, t.b, t.c, t.cx, t.cy, t.r2);
            tris.push_back(t);
        }
        // Compact occasionally so the dead triangles do not pile up.
        if (tris.size() > 16 * static_cast<size_t>(n) + 64) {
            std::erase_if(tris, [](const Triangle& t) { return !t.alive; });
        }
    }

    std::vector<std::set<int>> adj(static_cast<size_t>(n) + 1);
    size_t real_triangles = 0;
    for (const Triangle& t : tris) {
        if (!t.alive) continue;
        if (t.a <= n && t.b <= n && t.c <= n) ++real_triangles;
        int vs[3] = {t.a, t.b, t.c};
        for (int e = 0; e < 3; ++e)
            for (int f = e + 1; f < 3; ++f) {
                int u = vs[e], v = vs[f];
                if (u > n || v > n) continue;  // super-triangle vertex
                adj[static_cast<size_t>(u)].insert(v);
                adj[static_cast<size_t>(v)].insert(u);
            }
    }
    // No triangle of real points means the input was degenerate (collinear).
    if (real_triangles == 0) throw DegenerateGeometry{};

    std::vector<std::vector<int>> lists(static_cast<size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        if (adj[static_cast<size_t>(i)].empty()) throw DegenerateGeometry{};
        lists[static_cast<size_t>(i)].assign(adj[static_cast<size_t>(i)].begin(), adj[static_cast<size_t>(i)].end());
    }
    return lists;
}

std::vector<std::vector<int>> knn_adjacency(const Instance& inst, int k) {
    const int n = inst.num_cities();
    std::vector<std::vector<int>> lists(static_cast<size_t>(n) + 1);
    std::vector<int> others;
    others.reserve(static_cast<size_t>(n) - 1);
    for (int i = 1; i <= n; ++i) {
        others.clear();
        for (int j = 1; j <= n; ++j)
            if (j != i) others.push_back(j);
        int take = std::min<int>(k, n - 1);
        std::partial_sort(others.begin(), others.begin() + take, others.end(), [&](int a, int b) {
            double da = inst.distance(i, a), db = inst.distance(i, b);
            if (da != db) return da < db;
            return a < b;
        });
        lists[static_cast<size_t>(i)].assign(others.begin(), others.begin() + take);
    }
    return lists;
}

void sort_by_distance(const Instance& inst, std::vector<std::vector<int>>& lists) {
    for (int i = 1; i <= inst.num_cities(); ++i) {
        std::sort(lists[static_cast<size_t>(i)].begin(), lists[static_cast<size_t>(i)].end(), [&](int a, int b) {
            double da = inst.distance(i, a), db = inst.distance(i, b);
            if (da != db) return da < db;
            return a < b;
        });
    }
}

}  // namespace

CandidateLists build_candidates(const Instance& inst, NeighborBackend backend, int k) {
    CandidateLists out;
    if (backend == NeighborBackend::delaunay) {
        try {
            out.neighbors = delaunay_adjacency(inst);
            sort_by_distance(inst, out.neighbors);
            out.backend_used = NeighborBackend::delaunay;
            return out;
        } catch (const DegenerateGeometry&) {
            out.degenerate_fallback = true;
            std::clog << "ttp: degenerate geometry in '" << inst.name()
                      << "', falling back to knn neighbor lists\n";
        }
    }
    out.neighbors = knn_adjacency(inst, k);
    out.backend_used = NeighborBackend::knn;
    return out;
}

}  // namespace ttp
