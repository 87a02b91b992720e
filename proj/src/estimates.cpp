#include "rrg/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rrg/errors.hpp"

namespace rrg {

namespace {

void check_vertex(int v, int n, const char* what) {
    if (v < 0 || v >= n) throw BadInputError(std::string(what) + " out of range");
}

long long neighbor_degree_sum(const SimpleGraph& h, int v) {
    long long s = 0;
    if (v < h.n())
        for (int x : h.neighbors(v)) s += h.degree(x);
    return s;
}

int degree_in(const SimpleGraph& h, int v) { return v < h.n() ? h.degree(v) : 0; }

} // namespace

// ---- ConditioningPair ----

ConditioningPair::ConditioningPair(SimpleGraph h1_, SimpleGraph h2_)
    : h1(std::move(h1_)), h2(std::move(h2_)) {
    if (h1.n() != h2.n())
        throw BadInputError("conditioning graphs must share the vertex set");
    if (!h1.edge_disjoint(h2))
        throw BadInputError("present and absent conditioning edges must be disjoint");
}

ConditioningPair ConditioningPair::empty(int n) {
    return ConditioningPair(SimpleGraph(n, {}), SimpleGraph(n, {}));
}

SimpleGraph ConditioningPair::union_graph() const {
    std::vector<Edge> edges = h1.edges();
    edges.insert(edges.end(), h2.edges().begin(), h2.edges().end());
    return SimpleGraph(h1.n(), std::move(edges));
}

// ---- phi / phi_approx ----

long long phi(const SimpleGraph& h, int u, int v, int d) {
    check_vertex(u, std::max(h.n(), std::max(u, v) + 1), "u");
    if (u == v) throw BadInputError("u and v must differ");
    if (h.has_edge(u, v)) throw ContractError("phi requires uv outside h");
    if (d < h.max_degree()) throw ContractError("phi requires d >= max degree of h");
    long long du = degree_in(h, u);
    long long dv = degree_in(h, v);
    long long value = -static_cast<long long>(d) - 2LL * h.m() -
                      static_cast<long long>(d - 1) * (du + dv) + du * dv +
                      neighbor_degree_sum(h, u) + neighbor_degree_sum(h, v);
    return value;
}

long long phi_approx(const SimpleGraph& h, int u, int v, int d) {
    if (u == v) throw BadInputError("u and v must differ");
    if (h.has_edge(u, v)) throw ContractError("phi_approx requires uv outside h");
    if (d < h.max_degree())
        throw ContractError("phi_approx requires d >= max degree of h");
    long long du = degree_in(h, u);
    long long dv = degree_in(h, v);
    return -2LL * h.m() - static_cast<long long>(d) * (1 + du + dv);
}

// ---- baseline ----

ProbEstimate cond_edge_prob_baseline(const ConditioningPair& ctx,
                                     const DegreeSequence& dseq, int u, int v) {
    int n = dseq.size();
    check_vertex(u, n, "u");
    check_vertex(v, n, "v");
    if (u == v) throw BadInputError("u and v must differ");
    if (ctx.h1.has_edge(u, v) || ctx.h2.has_edge(u, v))
        throw ContractError("conditioned edge uv must be unconstrained");
    long long du = dseq[u] - degree_in(ctx.h1, u);
    long long dv = dseq[v] - degree_in(ctx.h1, v);
    for (int w = 0; w < ctx.h1.n(); ++w)
        if (ctx.h1.degree(w) > dseq[w])
            throw ContractError("present-graph degrees exceed the degree sequence");
    long long denom = dseq.m() - 2LL * ctx.h1.m();
    if (denom <= 0) throw ContractError("degenerate denominator M - 2|H1| <= 0");
    Rat value = rat(du * dv, denom);
    return ProbEstimate{to_double(value), "baseline", "Dmax^2/M"};
}

// ---- refined, regular case ----

ProbEstimate cond_edge_prob_refined_regular(const SimpleGraph& h, int u, int v,
                                            int d, int n) {
    if (n <= 0 || d <= 0) throw BadInputError("need n > 0 and d > 0");
    if (d >= n) throw BadInputError("regular model needs d < n");
    if ((static_cast<long long>(d) * n) % 2 != 0)
        throw ModelError("no regular graph exists: dn is odd");
    check_vertex(u, n, "u");
    check_vertex(v, n, "v");
    if (u == v) throw BadInputError("u and v must differ");
    if (h.has_edge(u, v)) throw ContractError("conditioned edge uv must be outside h");
    if (h.max_degree() > d)
        throw ContractError("conditioning degrees exceed d");
    long long dn = static_cast<long long>(d) * n;
    if (4LL * h.m() > dn)
        throw ContractError("conditioning graph too large: require 2|h| <= dn/2");

    const std::string err = "h/n^2 + h^2/(dn)^2 + d^2/n^2";
    long long du = d - degree_in(h, u);
    long long dv = d - degree_in(h, v);
    if (du == 0 || dv == 0) return ProbEstimate{0.0, "refined-regular", err};

    Rat value = rat(du * dv, dn) * (rat(1) - rat(phi(h, u, v, d), dn));
    double out = to_double(value);
    if (out < 0) out = 0; // degenerate corner of the asymptotic formula
    return ProbEstimate{out, "refined-regular", err};
}

// ---- W set / bar_phi / refined, general case ----

WPairSet build_w_set(const ConditioningPair& ctx, int u, int v) {
    if (ctx.h1.has_edge(u, v) || ctx.h2.has_edge(u, v))
        throw ContractError("conditioned edge uv must be unconstrained");
    SimpleGraph uni = ctx.union_graph();
    WPairSet out;
    for (const auto& [a, b] : uni.edges()) {
        const int cand[2][2] = {{a, b}, {b, a}};
        for (auto& xy : cand) {
            int x = xy[0], y = xy[1];
            if (x == u || x == v || y == u || y == v) continue;
            if (uni.has_edge(x, u)) continue;
            if (uni.has_edge(y, v)) continue;
            out.pairs.push_back({x, y});
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

namespace {

struct ResidualStats {
    std::vector<long long> dt; // residual degrees after removing H1
    long long mt = 0;          // residual degree sum
    long long mt2 = 0;         // residual second falling-factorial sum
};

ResidualStats residual_stats(const ConditioningPair& ctx, const DegreeSequence& dseq) {
    ResidualStats rs;
    int n = dseq.size();
    rs.dt.resize(n);
    for (int i = 0; i < n; ++i) {
        long long dt = dseq[i] - degree_in(ctx.h1, i);
        if (dt < 0)
            throw ContractError("present-graph degrees exceed the degree sequence");
        rs.dt[i] = dt;
        rs.mt += dt;
        rs.mt2 += dt * (dt - 1);
    }
    return rs;
}

} // namespace

Rat bar_phi(const ConditioningPair& ctx, const DegreeSequence& dseq, int u, int v) {
    int n = dseq.size();
    check_vertex(u, n, "u");
    check_vertex(v, n, "v");
    if (u == v) throw BadInputError("u and v must differ");
    if (ctx.h1.has_edge(u, v) || ctx.h2.has_edge(u, v))
        throw ContractError("conditioned edge uv must be unconstrained");
    ResidualStats rs = residual_stats(ctx, dseq);
    if (rs.mt <= 0) throw ContractError("residual degree sum must be positive");
    SimpleGraph uni = ctx.union_graph();
    long long du = rs.dt[u], dv = rs.dt[v];
    long long nbr_sum = 0;
    if (u < uni.n())
        for (int x : uni.neighbors(u)) nbr_sum += rs.dt[x];
    if (v < uni.n())
        for (int y : uni.neighbors(v)) nbr_sum += rs.dt[y];
    Rat value = rat(-2 * (du + dv) + 2 - nbr_sum + du * dv);
    value -= rat(du + dv - 2) * rat(rs.mt2, rs.mt);
    return value;
}

ProbEstimate cond_edge_prob_refined_general(const ConditioningPair& ctx,
                                            const DegreeSequence& dseq, int u, int v) {
    int n = dseq.size();
    check_vertex(u, n, "u");
    check_vertex(v, n, "v");
    if (u == v) throw BadInputError("u and v must differ");
    if (ctx.h1.has_edge(u, v) || ctx.h2.has_edge(u, v))
        throw ContractError("conditioned edge uv must be unconstrained");
    ResidualStats rs = residual_stats(ctx, dseq);
    long long m = dseq.m();
    if (rs.mt < (m + 1) / 2)
        throw ContractError("residual degree sum below M/2 guard");
    const std::string err = "Dmax^5*n/M^3";
    long long du = rs.dt[u], dv = rs.dt[v];
    if (du == 0 || dv == 0) return ProbEstimate{0.0, "refined-general", err};

    Rat mt = rat(rs.mt);
    Rat mt2 = rat(rs.mt2);
    Rat middle = rat(1) - mt2 * mt2 / (mt * mt * mt) - mt2 / (mt * mt);
    for (const auto& [x, y] : build_w_set(ctx, u, v).pairs)
        middle -= rat(rs.dt[x] * rs.dt[y]) / (mt * mt);

    // The correction-factor denominator is the residual degree sum M - 2|H1|.
    Rat last = rat(1) - bar_phi(ctx, dseq, u, v) / mt;
    Rat value = rat(du * dv) / mt * middle * last;
    double out = to_double(value);
    if (out < 0) out = 0;
    return ProbEstimate{out, "refined-general", err};
}

// ---- joint subgraph probability (edge chaining) ----

ProbEstimate joint_subgraph_prob(const SimpleGraph& h, int d, int n) {
    if (h.m() > 50) throw CapabilityError("edge chain limited to 50 edges");
    const std::string err = "h^2/n^2 + h^3/(dn)^2 + h*d^2/n^2";
    if (h.max_degree() > d) return ProbEstimate{0.0, "edge-chain", err};
    Rat value = rat(1);
    std::vector<Edge> prefix;
    for (const auto& [a, b] : h.edges()) { // lexicographic construction order
        SimpleGraph cond(n, prefix);
        ProbEstimate step = cond_edge_prob_refined_regular(cond, a, b, d, n);
        value *= Rat(step.value);
        prefix.push_back({a, b});
    }
    return ProbEstimate{to_double(value), "edge-chain", err};
}

// ---- cycles ----

long long lambda_cycle_phi_sum(int ell, int d) {
    if (ell < 3) throw BadInputError("cycle length must be >= 3");
    long long sum = -d;                          // first edge
    if (ell >= 3) sum += -2LL * d;               // second edge
    for (int i = 3; i <= ell - 1; ++i) sum += -2LL * d - 2 * (i - 3) - 1;
    sum += -3LL * d + 3 - 2 * (ell - 3);         // closing edge
    return sum;
}

ProbEstimate lambda_cycle(int ell, int d, int n) {
    if (ell < 3) throw BadInputError("cycle length must be >= 3");
    if (n <= 0 || d <= 1) throw BadInputError("need n > 0 and d > 1");
    Rat base = rat(d - 1, n);
    Rat value = rat(1);
    for (int i = 0; i < ell; ++i) value *= base;
    long long dn = static_cast<long long>(d) * n;
    value *= rat(1) - rat(lambda_cycle_phi_sum(ell, d), dn);
    return ProbEstimate{to_double(value), "cycle-closed-form", "d^2/n^2"};
}

// ---- mu ----

namespace {

bool is_cycle_pattern(const Pattern& p) {
    if (p.t < 3 || p.h() != p.t) return false;
    for (int v = 0; v < p.t; ++v)
        if (p.graph.degree(v) != 2) return false;
    // connected 2-regular graph with t = h vertices/edges is a single cycle
    std::vector<bool> seen(p.t, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int visited = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : p.graph.neighbors(x))
            if (!seen[y]) {
                seen[y] = true;
                ++visited;
                stack.push_back(y);
            }
    }
    return visited == p.t;
}

} // namespace

ProbEstimate mu_pattern(const Pattern& p, int d, int n) {
    if (p.t > n) throw BadInputError("pattern larger than the host graph");
    const std::string err = "1/n + d^2/n^2";
    if (p.graph.max_degree() > d)
        return ProbEstimate{0.0, "pattern-expectation", err};
    Rat copies = rat(falling(n, p.t), Int(static_cast<long>(aut_size(p))));
    double lambda = is_cycle_pattern(p) ? lambda_cycle(p.t, d, n).value
                                        : joint_subgraph_prob(p.graph, d, n).value;
    double value = to_double(copies) * lambda;
    return ProbEstimate{value, "pattern-expectation", err};
}

// ---- triangle variance ----

TriangleVariance sigma2_triangle(int d, int n) {
    if (d < 2 || n <= d) throw BadInputError("need d >= 2 and n > d");
    TriangleVariance tv;
    Int dn = Int(d) * n;
    Rat dm1 = rat(d - 1, n);
    Rat lam3 = dm1 * dm1 * dm1; // leading cycle probability

    // (a) vertex-disjoint pairs, main term beyond the squared mean
    Rat a = lam3 * lam3 * rat(falling(n, 6), 2 * dn);
    // (b) pairs sharing one vertex (negative correction)
    Rat b = rat(-falling(n, 5) * (2 * d - 3) * ipow(d - 1, 5), 2 * dn * ipow(n, 5));
    // (c) pairs sharing an edge
    Rat c = rat(falling(n, 4) * ipow(d - 1, 4) * ipow(d - 2, 2), 2 * dn * ipow(n, 4));
    // (d) identical pairs: the mean-level term
    Rat lam_corr = lam3 * (rat(1) + rat(6 * d - 3, Int(d) * n));
    Rat dterm = rat(falling(n, 3), 6) * lam_corr;

    // combined closed form: the (a)+(b)+(c) total collapses to one product
    Rat combined =
        dterm - rat(ipow(d - 1, 4) * (d - 2) * falling(n - 1, 3), 2 * Int(d) * ipow(n, 4));

    tv.case_a = to_double(a);
    tv.case_b = to_double(b);
    tv.case_c = to_double(c);
    tv.case_d = to_double(dterm);
    tv.value = to_double(combined);
    tv.estimate = ProbEstimate{tv.value, "triangle-variance", "d^8/n^2"};
    return tv;
}

// ---- variance hypotheses ----

VarianceHypothesesReport variance_hypotheses(const Pattern& p, int d, int n,
                                             double threshold) {
    if (!is_strictly_balanced(p))
        throw ContractError("variance hypotheses require a strictly balanced pattern");
    int h = p.h(), t = p.t;
    VarianceHypothesesReport rep;
    rep.threshold = threshold;
    auto add = [&](const std::string& name, double ratio) {
        rep.ratios.push_back({name, ratio, ratio < threshold});
    };
    add("d^(h-1)/n^(h-t+1)",
        std::pow(d, h - 1) / std::pow(n, h - t + 1));
    add("d^(h+2)/n^(h-t+2)",
        std::pow(d, h + 2) / std::pow(n, h - t + 2));
    double mu = mu_pattern(p, d, n).value;
    for (int j = 1; j <= h - 1; ++j) {
        double r = rho(p, j).get_d();
        double ratio = std::pow(mu, 1.0 - static_cast<double>(j) / h) /
                       std::pow(n, t * r);
        add("mu^(1-" + std::to_string(j) + "/h)/n^(t*rho(" + std::to_string(j) + "))",
            ratio);
    }
    rep.all_pass = std::all_of(rep.ratios.begin(), rep.ratios.end(),
                               [](const HypothesisRatio& r) { return r.pass; });
    return rep;
}

// ---- corollary upper band ----

ProbEstimate cond_joint_upper_bound(const SimpleGraph& f, const SimpleGraph& h,
                                    int d, int n) {
    if (f.m() > 10) throw CapabilityError("upper bound limited to 10 edges");
    if (!f.edge_disjoint(h))
        throw ContractError("target and conditioning graphs must be edge-disjoint");
    long long dn = static_cast<long long>(d) * n;
    if (4LL * h.m() > dn)
        throw ContractError("conditioning graph too large: require 2|H| <= dn/2");
    const std::string err = "1/n + h/(dn) + d^2/n^2";
    if (f.max_degree() > d) return ProbEstimate{0.0, "joint-upper-bound", err};
    ProbEstimate chain = joint_subgraph_prob(f, d, n);
    return ProbEstimate{chain.value, "joint-upper-bound", err};
}

} // namespace rrg
