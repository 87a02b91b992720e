#include "rrg/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rrg/errors.hpp"
#include "rrg/parallel.hpp"

namespace rrg {

namespace {

constexpr int kMaxEnumVertices = 12;

void check_regular_params(int n, int d) {
    if (n < 1) throw BadInputError("need n >= 1");
    if (d < 0 || d >= n) throw BadInputError("need 0 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw ModelError("no regular graph exists: dn is odd");
}

void check_enum_budget(int n, int d) {
    check_regular_params(n, d);
    if (!enumeration_in_budget(n, d))
        throw CapabilityError("enumeration budget exceeded for (n, d)");
}

void check_pairing_budget(int n, int d) {
    check_regular_params(n, d);
    bool ok = (d <= 2 && n <= 10) || (d == 3 && n <= 8) || (d >= 4 && n <= 7);
    if (!ok) throw CapabilityError("pairing enumeration budget exceeded for (n, d)");
}

// Recursive lowest-vertex completion. At each step the lowest unsaturated
// vertex receives its full remaining neighbor set, chosen among unsaturated
// non-adjacent higher vertices; every labeled simple d-regular graph appears
// exactly once, in a deterministic order.
struct Enumerator {
    int n = 0;
    std::array<uint16_t, kMaxEnumVertices> adj{};
    std::array<int8_t, kMaxEnumVertices> res{};
    uint64_t total = 0;
    const EnumVisitor* visit = nullptr;

    void run() { descend(0); }

    void descend(int from) {
        int v = -1;
        for (int i = from; i < n; ++i)
            if (res[i] > 0) {
                v = i;
                break;
            }
        if (v < 0) {
            ++total;
            if (visit && *visit) {
                EnumGraphView view{n, adj.data()};
                (*visit)(view);
            }
            return;
        }
        uint16_t cand = 0;
        for (int w = v + 1; w < n; ++w)
            if (res[w] > 0 && !(adj[v] >> w & 1)) cand |= static_cast<uint16_t>(1u << w);
        int need = res[v];
        res[v] = 0;
        complete(v, need, cand);
        res[v] = static_cast<int8_t>(need);
    }

    void complete(int v, int need, uint16_t cand) {
        if (need == 0) {
            descend(v + 1);
            return;
        }
        if (std::popcount(cand) < need) return;
        int w = std::countr_zero(cand);
        uint16_t rest = static_cast<uint16_t>(cand & (cand - 1));
        adj[v] |= static_cast<uint16_t>(1u << w);
        adj[w] |= static_cast<uint16_t>(1u << v);
        --res[w];
        complete(v, need - 1, rest);
        ++res[w];
        adj[v] &= static_cast<uint16_t>(~(1u << w));
        adj[w] &= static_cast<uint16_t>(~(1u << v));
        complete(v, need, rest);
    }
};

Enumerator make_enumerator(int n, int d) {
    Enumerator e;
    e.n = n;
    e.res.fill(0);
    for (int i = 0; i < n; ++i) e.res[i] = static_cast<int8_t>(d);
    return e;
}

// All d-subsets of {1, ..., n-1} in the enumerator's own include-first
// order, used as the parallel branch partition for vertex 0.
void collect_first_neighborhoods(int n, int d, uint16_t chosen, int need, int from,
                                 std::vector<uint16_t>& out) {
    if (need == 0) {
        out.push_back(chosen);
        return;
    }
    if (n - from < need) return;
    collect_first_neighborhoods(n, d, static_cast<uint16_t>(chosen | (1u << from)),
                                need - 1, from + 1, out);
    collect_first_neighborhoods(n, d, chosen, need, from + 1, out);
}

} // namespace

bool enumeration_in_budget(int n, int d) {
    if (n < 1 || d < 0 || d >= n) return false;
    if ((static_cast<long long>(n) * d) % 2 != 0) return false;
    return (d <= 2 && n <= kMaxEnumVertices) || (d == 3 && n <= 10) ||
           (d >= 4 && n <= 8);
}

long long EnumGraphView::triangle_count() const {
    long long count = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (adj[u] >> v & 1) {
                uint16_t common = static_cast<uint16_t>(adj[u] & adj[v]);
                common &= static_cast<uint16_t>(~((1u << (v + 1)) - 1));
                count += std::popcount(common);
            }
    return count;
}

SimpleGraph EnumGraphView::to_graph() const {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (adj[u] >> v & 1) edges.push_back({u, v});
    return SimpleGraph(n, std::move(edges));
}

uint64_t enumerate_regular(int n, int d, const EnumVisitor& visit) {
    check_enum_budget(n, d);
    Enumerator e = make_enumerator(n, d);
    e.visit = &visit;
    e.run();
    return e.total;
}

uint64_t enumerate_regular_reduce(int n, int d, EnumAccumulator& acc) {
    check_enum_budget(n, d);
    std::vector<uint16_t> branches;
    collect_first_neighborhoods(n, d, 0, d, 1, branches);
    std::vector<uint64_t> totals(branches.size(), 0);
    std::vector<std::unique_ptr<EnumAccumulator>> parts(branches.size());
    parallel_for(branches.size(), [&](size_t b) {
        std::unique_ptr<EnumAccumulator> local = acc.clone_empty();
        Enumerator e = make_enumerator(n, d);
        uint16_t mask = branches[b];
        e.adj[0] = mask;
        e.res[0] = 0;
        for (int w = 1; w < n; ++w)
            if (mask >> w & 1) {
                e.adj[w] |= 1u;
                --e.res[w];
            }
        EnumVisitor visit = [&local](const EnumGraphView& g) { local->visit(g); };
        e.visit = &visit;
        e.descend(1);
        totals[b] = e.total;
        parts[b] = std::move(local);
    });
    uint64_t total = 0;
    for (size_t b = 0; b < branches.size(); ++b) {
        total += totals[b];
        acc.merge_from(*parts[b]);
    }
    return total;
}

namespace {

// Pairing-model recursion: repeatedly match the lowest free point; partner
// points are grouped by vertex, contributing a multiplicity weight equal to
// the partner vertex's free-point count. Loops and repeated vertex pairs are
// skipped, so the weighted leaf total counts exactly the pairings that
// project to simple graphs.
struct PairingCounter {
    int n = 0;
    std::array<uint16_t, kMaxEnumVertices> adj{};
    std::array<int8_t, kMaxEnumVertices> res{};
    unsigned __int128 total = 0;

    void recurse(unsigned __int128 weight) {
        int v = -1;
        for (int i = 0; i < n; ++i)
            if (res[i] > 0) {
                v = i;
                break;
            }
        if (v < 0) {
            total += weight;
            return;
        }
        --res[v];
        for (int w = v + 1; w < n; ++w) {
            if (res[w] <= 0 || (adj[v] >> w & 1)) continue;
            adj[v] |= static_cast<uint16_t>(1u << w);
            adj[w] |= static_cast<uint16_t>(1u << v);
            int mult = res[w];
            --res[w];
            recurse(weight * static_cast<unsigned>(mult));
            ++res[w];
            adj[v] &= static_cast<uint16_t>(~(1u << w));
            adj[w] &= static_cast<uint16_t>(~(1u << v));
        }
        ++res[v];
    }
};

} // namespace

uint64_t pairing_model_count(int n, int d) {
    check_pairing_budget(n, d);
    PairingCounter pc;
    pc.n = n;
    pc.res.fill(0);
    for (int i = 0; i < n; ++i) pc.res[i] = static_cast<int8_t>(d);
    pc.recurse(1);
    unsigned __int128 fact = 1;
    for (int i = 2; i <= d; ++i) fact *= static_cast<unsigned>(i);
    unsigned __int128 fact_pow = 1;
    for (int i = 0; i < n; ++i) fact_pow *= fact;
    if (fact_pow == 0 || pc.total % fact_pow != 0)
        throw ContractError("pairing total not divisible by the per-graph multiplicity");
    unsigned __int128 quotient = pc.total / fact_pow;
    if (quotient > UINT64_MAX)
        throw CapabilityError("pairing count exceeds 64-bit range");
    return static_cast<uint64_t>(quotient);
}

GraphClassIndex materialize_class(int n, int d, uint64_t max_graphs) {
    GraphClassIndex idx;
    idx.n = n;
    idx.d = d;
    EnumVisitor visit = [&idx, max_graphs](const EnumGraphView& g) {
        if (idx.graphs.size() >= max_graphs)
            throw CapabilityError("class larger than the materialization cap");
        idx.graphs.push_back(g.to_graph());
    };
    idx.total = enumerate_regular(n, d, visit);
    return idx;
}

namespace {

struct ContextMasks {
    std::array<uint16_t, kMaxEnumVertices> require{};
    std::array<uint16_t, kMaxEnumVertices> forbid{};
};

ContextMasks build_masks(int n, const ConditioningPair& ctx) {
    if (ctx.h1.n() > n)
        throw BadInputError("conditioning graphs exceed the enumeration vertex set");
    ContextMasks m;
    m.require.fill(0);
    m.forbid.fill(0);
    for (const auto& [a, b] : ctx.h1.edges()) {
        m.require[a] |= static_cast<uint16_t>(1u << b);
        m.require[b] |= static_cast<uint16_t>(1u << a);
    }
    for (const auto& [a, b] : ctx.h2.edges()) {
        m.forbid[a] |= static_cast<uint16_t>(1u << b);
        m.forbid[b] |= static_cast<uint16_t>(1u << a);
    }
    return m;
}

bool satisfies(const EnumGraphView& g, const ContextMasks& m) {
    for (int x = 0; x < g.n; ++x) {
        if (m.require[x] & ~g.adj[x]) return false;
        if (m.forbid[x] & g.adj[x]) return false;
    }
    return true;
}

} // namespace

ConditionalCounts exact_conditional_counts(int n, int d, const ConditioningPair& ctx,
                                           int u, int v) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
        throw BadInputError("conditioned edge endpoints out of range");
    ContextMasks masks = build_masks(n, ctx);
    ConditionalCounts counts;
    EnumVisitor visit = [&](const EnumGraphView& g) {
        if (!satisfies(g, masks)) return;
        ++counts.class_size;
        if (g.has_edge(u, v)) ++counts.edge_hits;
    };
    enumerate_regular(n, d, visit);
    return counts;
}

Rat exact_conditional_edge_prob(int n, int d, const ConditioningPair& ctx, int u,
                                int v) {
    ConditionalCounts counts = exact_conditional_counts(n, d, ctx, u, v);
    if (counts.class_size == 0)
        throw UndefinedProbabilityError("no graph satisfies the conditioning");
    return rat(Int(static_cast<unsigned long>(counts.edge_hits)),
               Int(static_cast<unsigned long>(counts.class_size)));
}

Rat exact_subgraph_prob(int n, int d, const ConditioningPair& ctx,
                        const SimpleGraph& f) {
    if (f.n() > n) throw BadInputError("target graph exceeds the enumeration vertex set");
    ContextMasks masks = build_masks(n, ctx);
    std::array<uint16_t, kMaxEnumVertices> want{};
    want.fill(0);
    for (const auto& [a, b] : f.edges()) {
        want[a] |= static_cast<uint16_t>(1u << b);
        want[b] |= static_cast<uint16_t>(1u << a);
    }
    uint64_t class_size = 0, hits = 0;
    EnumVisitor visit = [&](const EnumGraphView& g) {
        if (!satisfies(g, masks)) return;
        ++class_size;
        for (int x = 0; x < g.n; ++x)
            if (want[x] & ~g.adj[x]) return;
        ++hits;
    };
    enumerate_regular(n, d, visit);
    if (class_size == 0)
        throw UndefinedProbabilityError("no graph satisfies the conditioning");
    return rat(Int(static_cast<unsigned long>(hits)),
               Int(static_cast<unsigned long>(class_size)));
}

// ---- count distributions ----

CountDistribution::CountDistribution(std::map<long long, uint64_t> counts,
                                     uint64_t total) {
    if (total == 0) throw BadInputError("empty class has no count distribution");
    uint64_t sum = 0;
    for (const auto& [value, cnt] : counts) {
        if (cnt == 0) continue;
        pmf_[value] = rat(Int(static_cast<unsigned long>(cnt)),
                          Int(static_cast<unsigned long>(total)));
        sum += cnt;
    }
    if (sum != total)
        throw ContractError("count distribution does not cover the whole class");
}

CountDistribution CountDistribution::point_mass(long long value) {
    CountDistribution dist;
    dist.pmf_[value] = rat(1);
    return dist;
}

Rat CountDistribution::mean() const { return factorial_moment(1); }

Rat CountDistribution::variance() const {
    Rat m1 = mean();
    Rat m2 = rat(0);
    for (const auto& [value, p] : pmf_) m2 += rat(value) * rat(value) * p;
    return m2 - m1 * m1;
}

Rat CountDistribution::factorial_moment(int k) const {
    if (k < 1) throw BadInputError("factorial moment order must be >= 1");
    Rat total = rat(0);
    for (const auto& [value, p] : pmf_) total += rat(falling(value, k), Int(1)) * p;
    return total;
}

namespace {

// Counts pattern copies (edge subsets isomorphic to p) in the visited graph:
// injective embeddings preserving pattern edges, divided by the pattern's
// automorphism count. Pattern vertices are mapped in an order where each has
// a previously mapped neighbor when one exists, keeping candidate sets small.
struct EmbeddingCounter {
    int t = 0;
    std::vector<int> order;
    std::vector<uint16_t> mapped_nbrs; // pattern neighbors already mapped, per step
    long long aut = 1;

    explicit EmbeddingCounter(const Pattern& p) : t(p.t) {
        aut = aut_size(p);
        std::vector<bool> placed(t, false);
        for (int step = 0; step < t; ++step) {
            int best = -1, best_links = -1;
            for (int x = 0; x < t; ++x) {
                if (placed[x]) continue;
                int links = 0;
                for (int y : p.graph.neighbors(x))
                    if (placed[y]) ++links;
                if (links > best_links) {
                    best = x;
                    best_links = links;
                }
            }
            order.push_back(best);
            placed[best] = true;
        }
        std::vector<int> pos(t, -1);
        for (int step = 0; step < t; ++step) pos[order[step]] = step;
        mapped_nbrs.assign(t, 0);
        for (int step = 0; step < t; ++step) {
            int x = order[step];
            for (int y : p.graph.neighbors(x))
                if (pos[y] < step)
                    mapped_nbrs[step] |= static_cast<uint16_t>(1u << pos[y]);
        }
    }

    long long copies(const EnumGraphView& g) const {
        std::array<int, kMaxEnumVertices> image{};
        long long embeddings = count(g, 0, 0, image);
        if (embeddings % aut != 0)
            throw ContractError("embedding count not divisible by automorphisms");
        return embeddings / aut;
    }

  private:
    long long count(const EnumGraphView& g, int step, uint16_t used,
                    std::array<int, kMaxEnumVertices>& image) const {
        if (step == t) return 1;
        uint16_t cand = static_cast<uint16_t>(~used & ((1u << g.n) - 1));
        uint16_t nbrs = mapped_nbrs[step];
        while (nbrs) {
            int prev = std::countr_zero(nbrs);
            nbrs &= static_cast<uint16_t>(nbrs - 1);
            cand &= g.adj[image[prev]];
        }
        long long total = 0;
        while (cand) {
            int w = std::countr_zero(cand);
            cand &= static_cast<uint16_t>(cand - 1);
            image[step] = w;
            total += count(g, step + 1, static_cast<uint16_t>(used | (1u << w)), image);
        }
        return total;
    }
};

bool pattern_is_triangle(const Pattern& p) {
    return p.t == 3 && p.h() == 3 && p.graph.max_degree() == 2;
}

} // namespace

CountDistribution exact_count_distribution(int n, int d, const Pattern& p) {
    if (p.t > 5) throw CapabilityError("count distribution limited to patterns on <= 5 vertices");
    if (p.t > n) throw BadInputError("pattern larger than the host graph");
    std::map<long long, uint64_t> counts;
    uint64_t total = 0;
    if (pattern_is_triangle(p)) {
        EnumVisitor visit = [&](const EnumGraphView& g) { ++counts[g.triangle_count()]; };
        total = enumerate_regular(n, d, visit);
    } else {
        EmbeddingCounter counter(p);
        EnumVisitor visit = [&](const EnumGraphView& g) { ++counts[counter.copies(g)]; };
        total = enumerate_regular(n, d, visit);
    }
    return CountDistribution(std::move(counts), total);
}

std::vector<Rat> factorial_moments(const CountDistribution& dist, int k_max) {
    if (k_max < 1) throw BadInputError("need k_max >= 1");
    std::vector<Rat> out;
    out.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) out.push_back(dist.factorial_moment(k));
    return out;
}

// ---- class statistics and the advisory cache ----

ClassStats compute_class_stats(int n, int d) {
    ClassStats stats;
    stats.n = n;
    stats.d = d;
    EnumVisitor visit = [&](const EnumGraphView& g) { ++stats.triangle_counts[g.triangle_count()]; };
    stats.total = enumerate_regular(n, d, visit);
    return stats;
}

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string cache_path(const std::string& dir, int n, int d) {
    std::ostringstream key;
    key << "n=" << n << ",d=" << d;
    std::ostringstream name;
    name << "class-" << std::hex << fnv1a(key.str()) << ".txt";
    return (std::filesystem::path(dir) / name.str()).string();
}

} // namespace

std::optional<ClassStats> oracle_cache_load(const std::string& dir, int n, int d) {
    std::ifstream in(cache_path(dir, n, d));
    if (!in) return std::nullopt;
    std::string header;
    if (!std::getline(in, header) || header != "rrg-class-stats v1") return std::nullopt;
    ClassStats stats;
    std::string field;
    size_t rows = 0;
    if (!(in >> field >> stats.n) || field != "n") return std::nullopt;
    if (!(in >> field >> stats.d) || field != "d") return std::nullopt;
    if (!(in >> field >> stats.total) || field != "total") return std::nullopt;
    if (!(in >> field >> rows) || field != "triangles") return std::nullopt;
    for (size_t i = 0; i < rows; ++i) {
        long long value = 0;
        uint64_t cnt = 0;
        if (!(in >> value >> cnt)) return std::nullopt;
        stats.triangle_counts[value] = cnt;
    }
    if (stats.n != n || stats.d != d) return std::nullopt;
    uint64_t sum = 0;
    for (const auto& [value, cnt] : stats.triangle_counts) sum += cnt;
    if (sum != stats.total) return std::nullopt;
    return stats;
}

void oracle_cache_store(const std::string& dir, const ClassStats& stats) {
    std::filesystem::create_directories(dir);
    std::string path = cache_path(dir, stats.n, stats.d);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write cache file: " + path);
    out << "rrg-class-stats v1\n";
    out << "n " << stats.n << "\n";
    out << "d " << stats.d << "\n";
    out << "total " << stats.total << "\n";
    out << "triangles " << stats.triangle_counts.size() << "\n";
    for (const auto& [value, cnt] : stats.triangle_counts)
        out << value << " " << cnt << "\n";
    if (!out.flush()) throw IoError("failed writing cache file: " + path);
}

} // namespace rrg
