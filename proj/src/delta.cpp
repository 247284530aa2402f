#include "composer/delta.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace composer {

namespace {

[[noreturn]] void fail(const char* msg) { throw std::invalid_argument(msg); }

/* Sorted duplicate-free check for subset vectors. */
bool sorted_unique(const std::vector<int>& v) {
    for (size_t t = 1; t < v.size(); ++t)
        if (v[t - 1] >= v[t]) return false;
    return true;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> u;
    u.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}

/* [0, size-1] minus the sorted subset `in`. */
std::vector<int> complement_in(int size, const std::vector<int>& in) {
    std::vector<int> out;
    out.reserve(size - in.size());
    size_t p = 0;
    for (int t = 0; t < size; ++t) {
        if (p < in.size() && in[p] == t) { ++p; continue; }
        out.push_back(t);
    }
    return out;
}

StrictMap positions_in(const std::vector<int>& sub, const std::vector<int>& uni) {
    std::vector<int> vals;
    vals.reserve(sub.size());
    for (int a : sub) {
        auto it = std::lower_bound(uni.begin(), uni.end(), a);
        vals.push_back(static_cast<int>(it - uni.begin()));
    }
    return StrictMap(std::move(vals), static_cast<int>(uni.size()));
}

VertexPair pair_from_subsets(const std::vector<int>& P, const std::vector<int>& Q) {
    std::vector<int> uni = sorted_union(P, Q);
    return VertexPair{flat(positions_in(P, uni)), flat(positions_in(Q, uni))};
}

}  // namespace

void validate(const MonotoneMap& f) {
    if (f.vals.empty()) fail("monotone map: empty domain");
    if (f.cod_size < 1) fail("monotone map: empty codomain");
    int prev = 0;
    for (int v : f.vals) {
        if (v < prev || v >= f.cod_size) fail("monotone map: values not non-decreasing into codomain");
        prev = v;
    }
}

void validate(const StrictMap& g) {
    if (g.vals.empty()) fail("strict map: empty domain");
    if (g.cod_size < 1) fail("strict map: empty codomain");
    int prev = -1;
    for (int v : g.vals) {
        if (v <= prev || v >= g.cod_size) fail("strict map: values not strictly increasing into codomain");
        prev = v;
    }
}

void validate(const CombTrio& trio) {
    if (trio.X.empty() || trio.A.empty() || trio.A2.empty()) fail("comb-trio: empty part");
    std::vector<int> all = sorted_union(sorted_union(trio.X, trio.A), trio.A2);
    if (static_cast<int>(all.size()) != trio.m + 1 || !sorted_unique(all) ||
        all.front() != 0 || all.back() != trio.m)
        fail("comb-trio: parts do not partition [m]");
}

void validate(const OrderedPartition& p) {
    std::vector<int> all;
    for (const auto& b : p.blocks) {
        if (b.empty()) fail("partition: empty block");
        if (!sorted_unique(b)) fail("partition: block not sorted");
        all.insert(all.end(), b.begin(), b.end());
    }
    std::sort(all.begin(), all.end());
    if (static_cast<int>(all.size()) != p.m + 1 || !sorted_unique(all) ||
        all.empty() || all.front() != 0 || all.back() != p.m)
        fail("partition: blocks do not partition [m]");
}

bool is_strict(const MonotoneMap& f) {
    for (int t = 1; t < f.dom_size(); ++t)
        if (f.vals[t - 1] >= f.vals[t]) return false;
    return true;
}

MonotoneMap identity_map(int dom_size) {
    if (dom_size < 1) fail("identity: empty domain");
    std::vector<int> v(dom_size);
    std::iota(v.begin(), v.end(), 0);
    return MonotoneMap(std::move(v), dom_size);
}

MonotoneMap face_map(int m, int i) {
    if (m < 1 || i < 0 || i > m) fail("face map: index out of range");
    std::vector<int> v(m);
    for (int t = 0; t < m; ++t) v[t] = t < i ? t : t + 1;
    return MonotoneMap(std::move(v), m + 1);
}

MonotoneMap degeneracy_map(int m, int j) {
    if (m < 0 || j < 0 || j > m) fail("degeneracy map: index out of range");
    std::vector<int> v(m + 2);
    for (int t = 0; t <= m + 1; ++t) v[t] = t <= j ? t : t - 1;
    return MonotoneMap(std::move(v), m + 1);
}

MonotoneMap as_monotone(const StrictMap& g) { return MonotoneMap(g.vals, g.cod_size); }

StrictMap as_strict(const MonotoneMap& f) {
    if (!is_strict(f)) fail("as_strict: map is not strictly increasing");
    return StrictMap(f.vals, f.cod_size);
}

StrictMap subset_map(const std::vector<int>& subset, int cod_size) {
    StrictMap g(subset, cod_size);
    validate(g);
    return g;
}

MonotoneMap compose_maps(const MonotoneMap& f, const MonotoneMap& g) {
    if (f.cod_size != g.dom_size()) fail("compose: codomain/domain mismatch");
    std::vector<int> v(f.dom_size());
    for (int t = 0; t < f.dom_size(); ++t) v[t] = g.vals[f.vals[t]];
    return MonotoneMap(std::move(v), g.cod_size);
}

StrictMap compose_maps(const StrictMap& f, const StrictMap& g) {
    return as_strict(compose_maps(as_monotone(f), as_monotone(g)));
}

StandardForm standard_form(const MonotoneMap& f) {
    StandardForm sf;
    for (int t = 0; t + 1 < f.dom_size(); ++t)
        if (f.vals[t] == f.vals[t + 1]) sf.degen_indices.push_back(t);
    std::vector<int> img(f.vals);
    img.erase(std::unique(img.begin(), img.end()), img.end());
    std::vector<int> missing = complement_in(f.cod_size, img);
    sf.face_indices.assign(missing.rbegin(), missing.rend());
    return sf;
}

MonotoneMap recompose(const StandardForm& sf, int dom_size) {
    MonotoneMap cur = identity_map(dom_size);
    /* rightmost generator acts first: s_{j_p}, ..., s_{j_1}, then
     * d_{i_q}, ..., d_{i_1} */
    for (auto it = sf.degen_indices.rbegin(); it != sf.degen_indices.rend(); ++it)
        cur = compose_maps(cur, degeneracy_map(cur.cod_size - 2, *it));
    for (auto it = sf.face_indices.rbegin(); it != sf.face_indices.rend(); ++it)
        cur = compose_maps(cur, face_map(cur.cod_size, *it));
    return cur;
}

StrictMap sharp(const MonotoneMap& f) {
    std::vector<int> v(f.dom_size());
    for (int t = 0; t < f.dom_size(); ++t) v[t] = f.vals[t] + t;
    return StrictMap(std::move(v), f.cod_size + f.dom_size() - 1);
}

MonotoneMap flat(const StrictMap& g) {
    validate(g);
    if (g.cod_size < g.dom_size()) fail("flat: codomain smaller than domain");
    std::vector<int> v(g.dom_size());
    for (int t = 0; t < g.dom_size(); ++t) v[t] = g.vals[t] - t;
    return MonotoneMap(std::move(v), g.cod_size - g.dom_size() + 1);
}

MonotoneMap complement(const MonotoneMap& lam) {
    validate(lam);
    StrictMap s = sharp(lam);
    return flat(StrictMap(complement_in(s.cod_size, s.vals), s.cod_size));
}

VertexPair make_pair_of(const MonotoneMap& mu) { return VertexPair{mu, complement(mu)}; }

std::vector<int> histogram(const MonotoneMap& f) {
    std::vector<int> h(f.cod_size, 0);
    for (int v : f.vals) ++h[v];
    return h;
}

MonotoneMap reconstruct(const std::vector<int>& hg) {
    if (hg.size() < 2) fail("reconstruct: histogram needs at least two bins");
    int sum = 0;
    std::vector<int> v;
    v.reserve(hg.size() - 1);
    for (size_t t = 0; t + 1 < hg.size(); ++t) {
        if (hg[t] < 0) fail("reconstruct: negative histogram entry");
        sum += hg[t];
        v.push_back(sum);
    }
    if (hg.back() < 0) fail("reconstruct: negative histogram entry");
    sum += hg.back();
    return MonotoneMap(std::move(v), sum + 1);
}

SumSplit sum_split(const StrictMap& g, const StrictMap& g2) {
    validate(g);
    validate(g2);
    if (g.cod_size != g2.cod_size) fail("sum_split: codomain mismatch");
    std::vector<int> uni = sorted_union(g.vals, g2.vals);
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
    if (static_cast<int>(uni.size()) != g.cod_size) fail("sum_split: images do not cover the codomain");
    std::vector<int> meet;
    std::set_intersection(g.vals.begin(), g.vals.end(), g2.vals.begin(), g2.vals.end(),
                          std::back_inserter(meet));
    if (meet.empty()) fail("sum_split: images do not meet");
    SumSplit out;
    out.h = StrictMap(meet, g.cod_size);
    out.f = positions_in(meet, g.vals);
    out.f2 = positions_in(meet, g2.vals);
    return out;
}

namespace {

/* Extension feasibility: delta-condition plus the tail bound. */
bool extendable(const StrictMap& f, const StrictMap& g) {
    if (f.dom_size() != g.dom_size()) return false;
    if (f.vals[0] > g.vals[0]) return false;
    for (int p = 1; p < f.dom_size(); ++p)
        if (f.vals[p] - f.vals[p - 1] > g.vals[p] - g.vals[p - 1]) return false;
    int n = f.cod_size - 1, m = g.cod_size - 1, j = f.dom_size() - 1;
    return n - f.vals[j] <= m - g.vals[j];
}

}  // namespace

StrictMap extend(const StrictMap& f, const StrictMap& g) {
    validate(f);
    validate(g);
    if (f.dom_size() != g.dom_size()) fail("extend: domain mismatch");
    if (!extendable(f, g)) fail("extend: no extension exists");
    int n = f.cod_size - 1, j = f.dom_size() - 1;
    std::vector<int> v(n + 1);
    for (int t = 0; t <= n; ++t) {
        if (t < f.vals[0]) { v[t] = t; continue; }
        int p = j;
        while (f.vals[p] > t) --p;
        /* now f(p) <= t, and t < f(p+1) when p < j */
        v[t] = g.vals[p] + t - f.vals[p];
    }
    return StrictMap(std::move(v), g.cod_size);
}

std::vector<StrictMap> extend_all(const StrictMap& f, const StrictMap& g) {
    validate(f);
    validate(g);
    if (f.dom_size() != g.dom_size()) fail("extend_all: domain mismatch");
    std::vector<StrictMap> out;
    if (!extendable(f, g)) return out;
    int n = f.cod_size - 1, m = g.cod_size - 1, j = f.dom_size() - 1;

    /* gaps[t]: free positions between pinned ones, with their candidate
     * value ranges [lo, hi] */
    struct Gap { int count, lo, hi; };
    std::vector<Gap> gaps;
    gaps.push_back({f.vals[0], 0, g.vals[0] - 1});
    for (int p = 0; p < j; ++p)
        gaps.push_back({f.vals[p + 1] - f.vals[p] - 1, g.vals[p] + 1, g.vals[p + 1] - 1});
    gaps.push_back({n - f.vals[j], g.vals[j] + 1, m});

    std::vector<std::vector<std::vector<int>>> choices;
    for (const Gap& gp : gaps) {
        int avail = gp.hi - gp.lo + 1;
        std::vector<std::vector<int>> cs;
        for (auto& c : combinations(avail, gp.count)) {
            for (int& x : c) x += gp.lo;
            cs.push_back(std::move(c));
        }
        choices.push_back(std::move(cs));
    }

    std::vector<size_t> idx(choices.size(), 0);
    while (true) {
        std::vector<int> v;
        v.reserve(n + 1);
        for (size_t gi = 0; gi < gaps.size(); ++gi) {
            const auto& c = choices[gi][idx[gi]];
            v.insert(v.end(), c.begin(), c.end());
            if (gi < gaps.size() - 1) v.push_back(g.vals[gi]);
        }
        out.emplace_back(std::move(v), g.cod_size);
        size_t gi = gaps.size();
        while (gi-- > 0) {
            if (++idx[gi] < choices[gi].size()) break;
            idx[gi] = 0;
            if (gi == 0) return out;
        }
    }
}

StrictMap joint_extend(const StrictMap& f, const StrictMap& g,
                       const StrictMap& alpha, const StrictMap& beta) {
    validate(f);
    validate(g);
    validate(alpha);
    validate(beta);
    if (f.cod_size != g.cod_size || f.dom_size() + g.dom_size() != f.cod_size)
        fail("joint_extend: images of f and g cannot partition the middle ordinal");
    if (alpha.cod_size != beta.cod_size || alpha.dom_size() != f.dom_size() ||
        beta.dom_size() != g.dom_size())
        fail("joint_extend: domain/codomain mismatch");
    std::vector<int> middle = sorted_union(f.vals, g.vals);
    if (!sorted_unique(middle)) fail("joint_extend: images of f and g are not disjoint");
    for (int p = 0; p < f.dom_size(); ++p)
        for (int q = 0; q < g.dom_size(); ++q)
            if ((f.vals[p] < g.vals[q]) != (alpha.vals[p] < beta.vals[q]))
                fail("joint_extend: order compatibility fails, no factorization");
    std::vector<int> v(f.cod_size);
    for (int p = 0; p < f.dom_size(); ++p) v[f.vals[p]] = alpha.vals[p];
    for (int q = 0; q < g.dom_size(); ++q) v[g.vals[q]] = beta.vals[q];
    StrictMap out(std::move(v), alpha.cod_size);
    validate(out);
    return out;
}

VertexPair trio_pair_xa(const CombTrio& trio) { return pair_from_subsets(trio.X, trio.A); }
VertexPair trio_pair_xa2(const CombTrio& trio) { return pair_from_subsets(trio.X, trio.A2); }
VertexPair trio_pair_aa2(const CombTrio& trio) { return pair_from_subsets(trio.A, trio.A2); }

std::vector<CombTrio> comb_trio_from_pairs(const VertexPair& p1, const VertexPair& p2) {
    validate(p1.mu);
    validate(p2.mu);
    if (complement(p1.mu) != p1.lam || complement(p2.mu) != p2.lam)
        fail("comb_trio_from_pairs: inputs are not complementary pairs");
    if (p1.mu.dom_size() != p2.mu.dom_size())
        fail("comb_trio_from_pairs: pairs disagree on k");
    int k = p1.mu.dom_size() - 1;
    int j = p1.mu.cod_size - 2;
    int j2 = p2.mu.cod_size - 2;
    int m = j + j2 + k + 2;

    StrictMap mu_s = sharp(p1.mu), mu2_s = sharp(p2.mu), lam_s = sharp(p1.lam);
    std::vector<int> xi_vals(k + 1);
    for (int q = 0; q <= k; ++q) xi_vals[q] = mu_s.vals[q] + mu2_s.vals[q] - q;
    StrictMap xi(std::move(xi_vals), m + 1);

    std::vector<CombTrio> out;
    for (const StrictMap& tau : extend_all(mu_s, xi)) {
        CombTrio trio;
        trio.m = m;
        trio.X = xi.vals;
        for (int p = 0; p <= j; ++p) trio.A.push_back(tau.vals[lam_s.vals[p]]);
        trio.A2 = complement_in(m + 1, sorted_union(trio.X, trio.A));
        validate(trio);
        if (trio_pair_xa(trio) == p1 && trio_pair_xa2(trio) == p2)
            out.push_back(std::move(trio));
    }
    return out;
}

OrderedPartition subpartition(const OrderedPartition& p, const std::vector<int>& B) {
    validate(p);
    if (B.empty() || !sorted_unique(B) || B.back() >= static_cast<int>(p.blocks.size()))
        fail("subpartition: selector is not a nonempty subset of [n]");
    std::vector<int> uni;
    for (int t : B) uni = sorted_union(uni, p.blocks[t]);
    OrderedPartition out;
    out.m = static_cast<int>(uni.size()) - 1;
    for (int t : B) out.blocks.push_back(positions_in(p.blocks[t], uni).vals);
    return out;
}

StrictMap partition_h(const OrderedPartition& p, int i, int j) {
    if (i < 0 || j < 0 || i >= static_cast<int>(p.blocks.size()) ||
        j >= static_cast<int>(p.blocks.size()) || i == j)
        fail("partition_h: bad block indices");
    return positions_in(p.blocks[i], sorted_union(p.blocks[i], p.blocks[j]));
}

OrderedPartition partition_from_h(const std::vector<int>& k_sizes,
                                  const std::vector<StrictMap>& h0i) {
    int n = static_cast<int>(k_sizes.size()) - 1;
    if (n < 1) fail("partition_from_h: need at least two blocks");
    if (static_cast<int>(h0i.size()) != n) fail("partition_from_h: need n maps h_{0,i}");
    int k0 = k_sizes[0];
    for (int i = 1; i <= n; ++i) {
        const StrictMap& h = h0i[i - 1];
        validate(h);
        if (h.dom_size() != k0 + 1 || h.cod_size != k0 + k_sizes[i] + 2)
            fail("partition_from_h: h_{0,i} has wrong dimensions");
    }

    /* Base: the two-block partition of [k0+k1+1] determined by h_{0,1}. */
    int m = k0 + k_sizes[1] + 1;
    OrderedPartition part;
    part.m = m;
    part.blocks.push_back(h0i[0].vals);
    part.blocks.push_back(complement_in(m + 1, h0i[0].vals));

    /* Step: A_0-flat is the running sum of the h-flats; the canonical
     * extension along the old A_0 transports the other blocks. */
    std::vector<int> a0_flat = flat(h0i[0]).vals;
    for (int i = 2; i <= n; ++i) {
        const std::vector<int> hf = flat(h0i[i - 1]).vals;
        for (int p = 0; p <= k0; ++p) a0_flat[p] += hf[p];
        int m_new = m + k_sizes[i] + 1;
        std::vector<int> a0_new(k0 + 1);
        for (int p = 0; p <= k0; ++p) a0_new[p] = a0_flat[p] + p;
        StrictMap U = extend(StrictMap(part.blocks[0], m + 1), StrictMap(a0_new, m_new + 1));
        OrderedPartition next;
        next.m = m_new;
        next.blocks.push_back(a0_new);
        std::vector<int> used = a0_new;
        for (size_t b = 1; b < part.blocks.size(); ++b) {
            std::vector<int> moved;
            for (int t : part.blocks[b]) moved.push_back(U.vals[t]);
            used = sorted_union(used, moved);
            next.blocks.push_back(std::move(moved));
        }
        next.blocks.push_back(complement_in(m_new + 1, used));
        part = std::move(next);
        m = m_new;
    }
    validate(part);
    return part;
}

std::vector<int> sigma_image(const std::vector<int>& A, int k) {
    if (!sorted_unique(A)) fail("sigma_image: subset not sorted");
    if (k < 0) fail("sigma_image: negative index");
    std::vector<int> out;
    out.reserve(A.size());
    for (int t : A) {
        if (t == k || t == k + 1) fail("sigma_image: subset meets the collapsed pair");
        out.push_back(t < k ? t : t - 1);
    }
    return out;
}

MonotoneMap delta_horn_fill(const std::vector<std::optional<MonotoneMap>>& lams, int i) {
    int slots = static_cast<int>(lams.size());
    if (slots < 3 || i < 0 || i >= slots) fail("delta_horn_fill: bad horn shape");
    int k = slots - 2;
    int cod = -1;
    for (int p = 0; p < slots; ++p) {
        if (p == i) continue;
        if (!lams[p]) fail("delta_horn_fill: missing face other than the horn slot");
        validate(*lams[p]);
        if (lams[p]->dom_size() != k + 1) fail("delta_horn_fill: face has wrong dimension");
        if (cod < 0) cod = lams[p]->cod_size;
        if (lams[p]->cod_size != cod) fail("delta_horn_fill: faces land in different ordinals");
    }

    /* the two least present slots p < q determine the filler */
    int p = -1, q = -1;
    for (int t = 0; t < slots && q < 0; ++t) {
        if (t == i) continue;
        if (p < 0) p = t;
        else q = t;
    }

    const MonotoneMap& lp = *lams[p];
    const MonotoneMap& lq = *lams[q];
    std::vector<int> v;
    v.reserve(k + 2);
    v.insert(v.end(), lp.vals.begin(), lp.vals.begin() + p);
    v.push_back(lq.vals[p]);
    v.insert(v.end(), lp.vals.begin() + p, lp.vals.end());
    MonotoneMap mu(std::move(v), cod);
    for (int t = 1; t < mu.dom_size(); ++t)
        if (mu.vals[t - 1] > mu.vals[t]) fail("delta_horn_fill: faces are incompatible");
    for (int r = 0; r < slots; ++r) {
        if (r == i) continue;
        if (compose_maps(face_map(k + 1, r), mu) != *lams[r])
            fail("delta_horn_fill: faces are incompatible");
    }
    return mu;
}

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        int t = k - 1;
        while (t >= 0 && idx[t] == n - k + t) --t;
        if (t < 0) break;
        ++idx[t];
        for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
    }
    return out;
}

std::vector<MonotoneMap> all_monotone_maps(int dom_size, int cod_size) {
    std::vector<MonotoneMap> out;
    std::vector<int> v(dom_size, 0);
    while (true) {
        out.emplace_back(v, cod_size);
        int t = dom_size - 1;
        while (t >= 0 && v[t] == cod_size - 1) --t;
        if (t < 0) break;
        ++v[t];
        for (int u = t + 1; u < dom_size; ++u) v[u] = v[t];
    }
    return out;
}

std::vector<StrictMap> all_strict_maps(int dom_size, int cod_size) {
    std::vector<StrictMap> out;
    for (const auto& c : combinations(cod_size, dom_size)) out.emplace_back(c, cod_size);
    return out;
}

}  // namespace composer
