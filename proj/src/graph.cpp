#include "rrg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "rrg/errors.hpp"

namespace rrg {

SimpleGraph::SimpleGraph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) throw BadInputError("vertex count must be nonnegative");
    adj_.assign(n_, {});
    for (auto& e : edges) e = make_edge(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges_ = std::move(edges);
    for (const auto& [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool SimpleGraph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    const auto& nb = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(nb.begin(), nb.end(), other);
}

int SimpleGraph::max_degree() const {
    int md = 0;
    for (int v = 0; v < n_; ++v) md = std::max(md, degree(v));
    return md;
}

bool SimpleGraph::contains(const SimpleGraph& sub) const {
    for (const auto& [u, v] : sub.edges())
        if (!has_edge(u, v)) return false;
    return true;
}

bool SimpleGraph::edge_disjoint(const SimpleGraph& other) const {
    for (const auto& [u, v] : other.edges())
        if (has_edge(u, v)) return false;
    return true;
}

SimpleGraph build_graph(int n, const std::vector<Edge>& edge_list) {
    if (n < 0) throw BadInputError("vertex count must be nonnegative");
    std::set<Edge> seen;
    for (const auto& [a, b] : edge_list) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw BadInputError("edge endpoint out of range [0, n)");
        if (a == b) throw BadInputError("self-loop rejected");
        if (!seen.insert(make_edge(a, b)).second)
            throw BadInputError("duplicate edge rejected");
    }
    return SimpleGraph(n, edge_list);
}

// ---- DegreeSequence ----

DegreeSequence::DegreeSequence(std::vector<int> values) : values_(std::move(values)) {
    long long sum = 0;
    for (int d : values_) {
        if (d < 0) throw BadInputError("degree must be nonnegative");
        sum += d;
    }
    if (sum % 2 != 0) throw BadInputError("degree sum must be even");
}

DegreeSequence DegreeSequence::regular(int n, int d) {
    if (n < 0 || d < 0) throw BadInputError("n and d must be nonnegative");
    if (d >= n && !(n == 0 && d == 0))
        throw BadInputError("regular degree must satisfy d < n");
    return DegreeSequence(std::vector<int>(n, d));
}

long long DegreeSequence::m() const {
    return std::accumulate(values_.begin(), values_.end(), 0LL);
}

long long DegreeSequence::mj(int j) const {
    long long total = 0;
    for (int d : values_) {
        // (d)_j; a zero factor appears automatically whenever d < j.
        long long p = 1;
        for (int i = 0; i < j; ++i) p *= (d - i);
        total += p;
    }
    return total;
}

int DegreeSequence::max_degree() const {
    return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

bool DegreeSequence::is_regular() const {
    return values_.empty() ||
           std::all_of(values_.begin(), values_.end(),
                       [&](int d) { return d == values_[0]; });
}

DegreeSequence DegreeSequence::minus(const SimpleGraph& h) const {
    if (h.n() > size()) throw ContractError("graph larger than degree sequence");
    std::vector<int> vals = values_;
    for (int v = 0; v < h.n(); ++v) {
        vals[v] -= h.degree(v);
        if (vals[v] < 0)
            throw ContractError("subtracted degrees exceed the degree sequence");
    }
    return DegreeSequence(std::move(vals));
}

long long degree_stats(const DegreeSequence& dseq, int j) {
    if (j < 1) throw ContractError("degree_stats order must be >= 1");
    return j == 1 ? dseq.m() : dseq.mj(j);
}

// ---- Pattern factories ----

Pattern Pattern::cycle(int len) {
    if (len < 3) throw BadInputError("cycle length must be >= 3");
    std::vector<Edge> edges;
    for (int i = 0; i < len; ++i) edges.push_back(make_edge(i, (i + 1) % len));
    return Pattern(len, edges);
}

Pattern Pattern::clique(int k) {
    if (k < 1) throw BadInputError("clique size must be >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) edges.push_back({i, j});
    return Pattern(k, edges);
}

Pattern Pattern::path(int num_edges) {
    if (num_edges < 1) throw BadInputError("path must have >= 1 edge");
    std::vector<Edge> edges;
    for (int i = 0; i < num_edges; ++i) edges.push_back({i, i + 1});
    return Pattern(num_edges + 1, edges);
}

// ---- aut_size ----

namespace {

// Backtracking over degree-compatible maps. perm[i] = image of vertex i.
void aut_rec(const Pattern& p, std::vector<int>& perm, std::vector<bool>& used,
             int next, long long& count) {
    int t = p.t;
    if (next == t) {
        ++count;
        return;
    }
    for (int img = 0; img < t; ++img) {
        if (used[img]) continue;
        if (p.graph.degree(next) != p.graph.degree(img)) continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev) {
            bool orig = p.graph.has_edge(next, prev);
            bool mapped = p.graph.has_edge(img, perm[prev]);
            if (orig != mapped) ok = false;
        }
        if (!ok) continue;
        perm[next] = img;
        used[img] = true;
        aut_rec(p, perm, used, next + 1, count);
        used[img] = false;
    }
}

} // namespace

long long aut_size(const Pattern& p) {
    if (p.t > 12) throw CapabilityError("automorphism search limited to 12 vertices");
    if (p.t == 0) return 1;
    std::vector<int> perm(p.t, -1);
    std::vector<bool> used(p.t, false);
    long long count = 0;
    aut_rec(p, perm, used, 0, count);
    return count;
}

// ---- rho / strict balance ----

Rat rho(const Pattern& p, int j) {
    int h = p.h();
    int t = p.t;
    if (j < 1 || j > h - 1) throw BadInputError("rho order out of range [1, h-1]");
    if (h > 14) throw CapabilityError("rho subset enumeration limited to 14 edges");
    const auto& edges = p.graph.edges();
    int min_vertices = t + 1;
    // Iterate all C(h, j) edge subsets via bitmask combinations.
    for (uint32_t mask = (1u << j) - 1; mask < (1u << h);) {
        uint32_t vset = 0;
        for (int e = 0; e < h; ++e)
            if (mask >> e & 1) {
                vset |= 1u << edges[e].first;
                vset |= 1u << edges[e].second;
            }
        min_vertices = std::min(min_vertices, __builtin_popcount(vset));
        // next combination with the same popcount (Gosper's hack)
        uint32_t c = mask & -mask;
        uint32_t r = mask + c;
        if (r >= (1u << h)) break;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return rat(min_vertices, t) - rat(j, h);
}

bool is_strictly_balanced(const Pattern& p) {
    int h = p.h();
    for (int j = 1; j <= h - 1; ++j)
        if (rho(p, j) <= 0) return false;
    return true;
}

// ---- triangles ----

std::vector<std::array<int, 3>> enumerate_triangles(const SimpleGraph& g) {
    std::vector<std::array<int, 3>> out;
    for (const auto& [u, v] : g.edges()) {
        // u < v; common neighbors w > v close a triangle counted once.
        const auto& nu = g.neighbors(u);
        const auto& nv = g.neighbors(v);
        auto iu = std::lower_bound(nu.begin(), nu.end(), v + 1);
        auto iv = std::lower_bound(nv.begin(), nv.end(), v + 1);
        while (iu != nu.end() && iv != nv.end()) {
            if (*iu < *iv) ++iu;
            else if (*iv < *iu) ++iv;
            else {
                out.push_back({u, v, *iu});
                ++iu;
                ++iv;
            }
        }
    }
    return out;
}

// ---- TriangleTuple / holes ----

TriangleTuple::TriangleTuple(std::vector<std::array<int, 3>> triangles)
    : triangles_(std::move(triangles)) {
    for (auto& tri : triangles_) {
        std::sort(tri.begin(), tri.end());
        if (tri[0] < 0 || tri[0] == tri[1] || tri[1] == tri[2])
            throw BadInputError("triangle must have 3 distinct nonnegative vertices");
    }
}

std::vector<std::pair<int, int>> TriangleTuple::hit_multiplicities() const {
    std::vector<std::pair<int, int>> out;
    std::vector<int> verts;
    for (const auto& tri : triangles_)
        for (int v : tri) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    for (size_t i = 0; i < verts.size();) {
        size_t j = i;
        while (j < verts.size() && verts[j] == verts[i]) ++j;
        out.push_back({verts[i], static_cast<int>(j - i)});
        i = j;
    }
    return out;
}

std::vector<std::pair<int, int>> TriangleTuple::hit_counts() const {
    auto mult = hit_multiplicities();
    std::vector<std::pair<int, int>> out;
    std::vector<int> js;
    for (auto& [v, h] : mult) js.push_back(h);
    std::sort(js.begin(), js.end());
    for (size_t i = 0; i < js.size();) {
        size_t j = i;
        while (j < js.size() && js[j] == js[i]) ++j;
        out.push_back({js[i], static_cast<int>(j - i)});
        i = j;
    }
    return out;
}

long long hole_count(const TriangleTuple& tuple) {
    // Collect incident vertices and remap to a compact range.
    std::vector<int> verts;
    for (const auto& tri : tuple.triangles())
        for (int v : tri) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    int np = static_cast<int>(verts.size());
    if (np < 3) return 0;
    auto local = [&](int v) {
        return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) -
                                verts.begin());
    };

    // Distinct triangles in local ids; per-pair carrier bookkeeping:
    // how many distinct triangles contain the pair, and which one if unique.
    std::set<std::array<int, 3>> distinct;
    for (auto tri : tuple.triangles())
        distinct.insert({local(tri[0]), local(tri[1]), local(tri[2])});

    std::vector<int> carrier_count(static_cast<size_t>(np) * np, 0);
    std::vector<std::array<int, 3>> carrier_one(static_cast<size_t>(np) * np,
                                                {-1, -1, -1});
    auto pidx = [&](int a, int b) { return static_cast<size_t>(a) * np + b; };
    for (const auto& tri : distinct) {
        const int pairs[3][2] = {{tri[0], tri[1]}, {tri[0], tri[2]}, {tri[1], tri[2]}};
        for (auto& pr : pairs) {
            size_t id = pidx(pr[0], pr[1]);
            if (++carrier_count[id] == 1) carrier_one[id] = tri;
        }
    }

    // An edge {a,b} has a carrier other than candidate iff some triangle != candidate
    // contains it.
    auto carried_excluding = [&](int a, int b, const std::array<int, 3>& candidate) {
        size_t id = pidx(std::min(a, b), std::max(a, b));
        int c = carrier_count[id];
        if (c == 0) return false;
        if (c >= 2) return true;
        return carrier_one[id] != candidate;
    };

    long long holes = 0;
    for (int x = 0; x < np; ++x)
        for (int y = x + 1; y < np; ++y) {
            if (carrier_count[pidx(x, y)] == 0) continue;
            for (int z = y + 1; z < np; ++z) {
                std::array<int, 3> cand = {x, y, z};
                if (carried_excluding(x, y, cand) && carried_excluding(y, z, cand) &&
                    carried_excluding(x, z, cand))
                    ++holes;
            }
        }
    return holes;
}

bool triangle_bound_holds(const SimpleGraph& g) {
    // t <= 3 x^{3/2}  <=>  t^2 <= 9 x^3, checked in exact integers.
    Int x(g.m());
    Int t(static_cast<long>(enumerate_triangles(g).size()));
    return t * t <= 9 * x * x * x;
}

// ---- serialization ----

std::string serialize_graph(const SimpleGraph& g) {
    std::ostringstream os;
    os << g.n() << ' ' << g.m() << '\n';
    for (const auto& [u, v] : g.edges()) os << (u + 1) << ' ' << (v + 1) << '\n';
    return os.str();
}

SimpleGraph parse_graph(const std::string& text) {
    std::istringstream is(text);
    long long n = 0, m = 0;
    if (!(is >> n >> m)) throw BadInputError("graph header must be \"n m\"");
    if (n < 0 || m < 0) throw BadInputError("graph header out of range");
    std::vector<Edge> edges;
    for (long long i = 0; i < m; ++i) {
        long long u = 0, v = 0;
        if (!(is >> u >> v)) throw BadInputError("graph edge line truncated");
        if (u < 1 || v < 1 || u > n || v > n)
            throw BadInputError("edge endpoint out of range [1, n]");
        edges.push_back(make_edge(static_cast<int>(u - 1), static_cast<int>(v - 1)));
    }
    return build_graph(static_cast<int>(n), edges);
}

SimpleGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

void write_graph_file(const SimpleGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write graph file: " + path);
    out << serialize_graph(g);
    if (!out) throw IoError("write failed: " + path);
}

} // namespace rrg
