#include "composer/comma.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace composer {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

int entry_count(const TruncatedComplex& C, int m) {
    return static_cast<int>(C.cells[m].size());
}

void check_host(const TruncatedComplex& C, int m, int z, const char* who) {
    if (m < 0 || m > C.top_dim) fail(std::string(who) + ": dimension out of range");
    if (z < 0 || z >= entry_count(C, m)) fail(std::string(who) + ": simplex index out of range");
}

std::vector<int> positions_outside(const std::vector<int>& positions, int m) {
    std::vector<int> out;
    std::size_t at = 0;
    for (int v = 0; v <= m; ++v) {
        if (at < positions.size() && positions[at] == v)
            ++at;
        else
            out.push_back(v);
    }
    return out;
}

using WitnessFilter = std::function<bool(const CplWitness&)>;

CxComplex build_filtered(const TruncatedComplex& C, int k, int x, int bound,
                         const char* who, const WitnessFilter& keep) {
    validate(C);
    if (bound < 0) fail(std::string(who) + ": negative bound");
    check_host(C, k, x, who);
    if (bound + k + 1 > C.top_dim)
        fail(std::string(who) + ": the host stops below the bound");

    CxComplex out;
    out.complex.top_dim = bound;
    out.complex.cells.resize(bound + 1);
    out.witnesses.resize(bound + 1);
    std::vector<std::map<std::pair<int, std::vector<int>>, int>> index(bound + 1);
    for (int j = 0; j <= bound; ++j) {
        int m = j + k + 1;
        auto subsets = combinations(m + 1, k + 1);
        for (int z = 0; z < entry_count(C, m); ++z)
            for (const auto& P : subsets) {
                if (subface(C, m, z, P) != x) continue;
                CplWitness w = witness_at(C, m, z, P);
                if (!keep(w)) continue;
                index[j].emplace(std::make_pair(z, w.mu.vals),
                                 static_cast<int>(out.witnesses[j].size()));
                out.witnesses[j].push_back(std::move(w));
            }
    }
    auto lookup = [&](int j, const CplWitness& w) {
        auto it = index[j].find({w.z, w.mu.vals});
        if (it == index[j].end())
            throw std::runtime_error(std::string(who) +
                                     ": an operator leaves the witness set");
        return it->second;
    };
    for (int j = 0; j <= bound; ++j) {
        out.complex.cells[j].resize(out.witnesses[j].size());
        for (std::size_t at = 0; at < out.witnesses[j].size(); ++at) {
            const CplWitness& w = out.witnesses[j][at];
            SimplexEntry& e = out.complex.cells[j][at];
            e.rep = w.lam;
            if (j > 0) {
                e.faces.resize(j + 1);
                for (int p = 0; p <= j; ++p) e.faces[p] = lookup(j - 1, cx_face(C, w, p));
            }
            if (j < bound) {
                e.degens.resize(j + 1);
                for (int p = 0; p <= j; ++p) e.degens[p] = lookup(j + 1, cx_degen(C, w, p));
            }
        }
    }
    for (int j = 1; j <= bound; ++j)
        for (const auto& lower : out.complex.cells[j - 1])
            for (int v : lower.degens) out.complex.cells[j][v].degenerate = true;
    validate(out.complex);
    return out;
}

}  // namespace

int witness_k(const CplWitness& w) { return w.mu.dom_size() - 1; }

int witness_j(const CplWitness& w) { return w.lam.dom_size() - 1; }

int witness_dim(const CplWitness& w) { return witness_k(w) + witness_j(w) + 1; }

void validate(const TruncatedComplex& C, const CplWitness& w) {
    validate(w.mu);
    validate(w.lam);
    if (w.mu.cod_size != witness_j(w) + 2 || w.lam.cod_size != witness_k(w) + 2)
        fail("witness: vertex function codomains do not match the dimensions");
    if (complement(w.lam) != w.mu)
        fail("witness: the vertex functions are not complementary");
    check_host(C, witness_dim(w), w.z, "witness");
}

int subface(const TruncatedComplex& C, int m, int z, const std::vector<int>& positions) {
    check_host(C, m, z, "subface");
    if (positions.empty()) fail("subface: no positions");
    for (std::size_t at = 0; at < positions.size(); ++at) {
        if (positions[at] < 0 || positions[at] > m)
            fail("subface: position out of range");
        if (at > 0 && positions[at] <= positions[at - 1])
            fail("subface: positions not strictly increasing");
    }
    std::vector<int> deleted = positions_outside(positions, m);
    int cur = m;
    for (auto it = deleted.rbegin(); it != deleted.rend(); ++it) {
        z = C.cells[cur][z].faces[*it];
        --cur;
    }
    return z;
}

int vertex(const TruncatedComplex& C, int m, int z, int t) {
    return subface(C, m, z, {t});
}

CplWitness witness_at(const TruncatedComplex& C, int m, int z,
                      const std::vector<int>& positions) {
    check_host(C, m, z, "witness_at");
    if (positions.empty() || static_cast<int>(positions.size()) > m)
        fail("witness_at: positions must be a proper nonempty subset");
    MonotoneMap mu = flat(subset_map(positions, m + 1));
    MonotoneMap lam = flat(subset_map(positions_outside(positions, m), m + 1));
    return CplWitness{z, std::move(mu), std::move(lam)};
}

int fixed_subface(const TruncatedComplex& C, const CplWitness& w) {
    validate(C, w);
    return subface(C, witness_dim(w), w.z, sharp(w.mu).vals);
}

int complement_subface(const TruncatedComplex& C, const CplWitness& w) {
    validate(C, w);
    return subface(C, witness_dim(w), w.z, sharp(w.lam).vals);
}

CplWitness swapped(const CplWitness& w) { return CplWitness{w.z, w.lam, w.mu}; }

CplWitness cx_face(const TruncatedComplex& C, const CplWitness& w, int p) {
    validate(C, w);
    int j = witness_j(w);
    if (j < 1) fail("cx_face: the complement is a vertex");
    if (p < 0 || p > j) fail("cx_face: slot out of range");
    int host = C.cells[witness_dim(w)][w.z].faces[w.lam(p) + p];
    return CplWitness{host, compose_maps(w.mu, degeneracy_map(j, p)),
                      compose_maps(face_map(j, p), w.lam)};
}

CplWitness cx_degen(const TruncatedComplex& C, const CplWitness& w, int p) {
    validate(C, w);
    int j = witness_j(w);
    if (p < 0 || p > j) fail("cx_degen: slot out of range");
    if (witness_dim(w) >= C.top_dim)
        fail("cx_degen: the host stops at the witness level");
    int host = C.cells[witness_dim(w)][w.z].degens[w.lam(p) + p];
    return CplWitness{host, compose_maps(w.mu, face_map(j + 2, p + 1)),
                      compose_maps(degeneracy_map(j, p), w.lam)};
}

CplWitness cx_vertex(const TruncatedComplex& C, const CplWitness& w, int p) {
    int j = witness_j(w);
    if (p < 0 || p > j) fail("cx_vertex: slot out of range");
    CplWitness v = w;
    for (int q = j; q >= 0; --q) {
        if (q == p) continue;
        v = cx_face(C, v, q);
    }
    return v;
}

bool membership_L(const CplWitness& w, int t) {
    if (t < 0 || t > witness_k(w)) fail("membership_L: no such vertex of x");
    return w.lam(0) > t;
}

bool membership_R(const CplWitness& w, int t) {
    if (t < 0 || t > witness_k(w)) fail("membership_R: no such vertex of x");
    return w.lam(witness_j(w)) < witness_k(w) + 1 - t;
}

bool membership_plus(const CplWitness& w) {
    return w.mu(witness_k(w)) == witness_j(w) + 1;
}

CxComplex build_cx(const TruncatedComplex& C, int k, int x, int bound) {
    return build_filtered(C, k, x, bound, "build_cx",
                          [](const CplWitness&) { return true; });
}

CxComplex build_cx_plus(const TruncatedComplex& C, int k, int x, int bound) {
    return build_filtered(C, k, x, bound, "build_cx_plus", membership_plus);
}

CxComplex build_lx(const TruncatedComplex& C, int k, int x, int t, int bound) {
    if (t < 0 || t > k) fail("build_lx: no such vertex of x");
    return build_filtered(C, k, x, bound, "build_lx",
                          [t](const CplWitness& w) { return membership_L(w, t); });
}

CxComplex build_rx(const TruncatedComplex& C, int k, int x, int t, int bound) {
    if (t < 0 || t > k) fail("build_rx: no such vertex of x");
    return build_filtered(C, k, x, bound, "build_rx",
                          [t](const CplWitness& w) { return membership_R(w, t); });
}

void validate_map(const TruncatedComplex& C, const TruncatedComplex& D,
                  const SimplicialMap& F) {
    validate(C);
    validate(D);
    if (static_cast<int>(F.levels.size()) != C.top_dim + 1)
        fail("simplicial map: level count does not match the domain");
    if (D.top_dim < C.top_dim) fail("simplicial map: the target stops early");
    for (int m = 0; m <= C.top_dim; ++m) {
        if (static_cast<int>(F.levels[m].size()) != entry_count(C, m))
            fail("simplicial map: level width does not match the domain");
        for (int v : F.levels[m])
            if (v < 0 || v >= entry_count(D, m))
                fail("simplicial map: image index out of range");
    }
    for (int m = 1; m <= C.top_dim; ++m)
        for (int z = 0; z < entry_count(C, m); ++z)
            for (int p = 0; p <= m; ++p)
                if (F.levels[m - 1][C.cells[m][z].faces[p]] !=
                    D.cells[m][F.levels[m][z]].faces[p])
                    fail("simplicial map: faces do not commute");
    for (int m = 0; m < C.top_dim; ++m)
        for (int z = 0; z < entry_count(C, m); ++z)
            for (int p = 0; p <= m; ++p)
                if (F.levels[m + 1][C.cells[m][z].degens[p]] !=
                    D.cells[m][F.levels[m][z]].degens[p])
                    fail("simplicial map: degeneracies do not commute");
}

CplWitness push_witness(const SimplicialMap& F, const CplWitness& w) {
    int m = witness_dim(w);
    if (m >= static_cast<int>(F.levels.size()))
        fail("push_witness: the map stops below the witness");
    if (w.z < 0 || w.z >= static_cast<int>(F.levels[m].size()))
        fail("push_witness: host index out of range");
    return CplWitness{F.levels[m][w.z], w.mu, w.lam};
}

CxfComplex build_cxf(const TruncatedComplex& C, int k, int x,
                     const TruncatedComplex& D, const SimplicialMap& F, int bound) {
    validate_map(D, C, F);
    if (bound > D.top_dim) fail("build_cxf: the paired complex stops below the bound");
    CxComplex cx = build_cx(C, k, x, bound);

    CxfComplex out;
    out.complex.top_dim = bound;
    out.complex.cells.resize(bound + 1);
    out.pairs.resize(bound + 1);
    std::vector<std::vector<std::pair<int, int>>> keys(bound + 1);
    std::vector<std::map<std::pair<int, int>, int>> index(bound + 1);
    for (int j = 0; j <= bound; ++j)
        for (std::size_t at = 0; at < cx.witnesses[j].size(); ++at) {
            int y = complement_subface(C, cx.witnesses[j][at]);
            for (int v = 0; v < entry_count(D, j); ++v) {
                if (F.levels[j][v] != y) continue;
                index[j].emplace(std::make_pair(static_cast<int>(at), v),
                                 static_cast<int>(keys[j].size()));
                keys[j].push_back({static_cast<int>(at), v});
                out.pairs[j].push_back({cx.witnesses[j][at], v});
            }
        }
    auto lookup = [&](int j, int wat, int v) {
        auto it = index[j].find({wat, v});
        if (it == index[j].end())
            throw std::runtime_error("build_cxf: an operator leaves the pair set");
        return it->second;
    };
    for (int j = 0; j <= bound; ++j) {
        out.complex.cells[j].resize(keys[j].size());
        for (std::size_t at = 0; at < keys[j].size(); ++at) {
            auto [wat, v] = keys[j][at];
            const SimplexEntry& we = cx.complex.cells[j][wat];
            const SimplexEntry& ve = D.cells[j][v];
            SimplexEntry& e = out.complex.cells[j][at];
            e.rep = cx.witnesses[j][wat].lam;
            if (j > 0) {
                e.faces.resize(j + 1);
                for (int p = 0; p <= j; ++p)
                    e.faces[p] = lookup(j - 1, we.faces[p], ve.faces[p]);
            }
            if (j < bound) {
                e.degens.resize(j + 1);
                for (int p = 0; p <= j; ++p)
                    e.degens[p] = lookup(j + 1, we.degens[p], ve.degens[p]);
            }
        }
    }
    for (int j = 1; j <= bound; ++j)
        for (const auto& lower : out.complex.cells[j - 1])
            for (int v : lower.degens) out.complex.cells[j][v].degenerate = true;
    validate(out.complex);
    return out;
}

CheckReport check_cx_composer(const TruncatedComplex& C, int k, int x, int n, int i,
                              int depth) {
    if (depth < 1) fail("check_cx_composer: depth must be positive");
    CxComplex cx = build_cx(C, k, x, n + depth);
    return check_truncated_composer(cx.complex, n, i, depth);
}

}  // namespace composer
