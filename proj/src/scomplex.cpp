#include "composer/scomplex.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace composer {

namespace {

[[noreturn]] void fail(const char* msg) { throw std::invalid_argument(msg); }

int factorial(int n) {
    int f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

Mask full_mask(int dim) { return (Mask{1} << (dim + 1)) - 1; }

std::vector<int> mask_vertices(Mask W) {
    std::vector<int> vs;
    for (int v = 0; W >> v; ++v)
        if (W & (Mask{1} << v)) vs.push_back(v);
    return vs;
}

/* nonempty subsets of [dim], largest popcount first */
std::vector<Mask> masks_descending(int dim) {
    std::vector<Mask> ms;
    for (Mask W = 1; W <= full_mask(dim); ++W) ms.push_back(W);
    std::stable_sort(ms.begin(), ms.end(),
                     [](Mask a, Mask b) { return std::popcount(a) > std::popcount(b); });
    return ms;
}

/* face of W at its q-th surviving vertex, renumbered for the subface */
Mask drop_vertex(Mask W, int v) { return W & ~(Mask{1} << v); }

/* key of the parent node W inside the face omitting vertex j */
Mask compress_mask(Mask W, int j) {
    Mask low = (Mask{1} << j) - 1;
    return (W & low) | ((W >> (j + 1)) << j);
}

VTuple restrict_tuple(const VTuple& t, Mask W) {
    VTuple u;
    for (int v : mask_vertices(W)) u.push_back(t[v]);
    return u;
}

std::set<FundamentalTuple> expand_node(const std::set<VTuple>& ts) {
    std::set<FundamentalTuple> out;
    for (const VTuple& t : ts) out.insert(h_map(t));
    return out;
}

}  // namespace

int fsig_size(int n) {
    if (n < 0) fail("fsig_size: negative dimension");
    return factorial(n + 1);
}

std::vector<int> entry_columns(int n) {
    if (n < 0) fail("entry_columns: negative dimension");
    if (n == 0) return {0};
    std::vector<int> prev = entry_columns(n - 1), out;
    out.reserve(fsig_size(n));
    for (int j = 0; j <= n; ++j)
        for (int v : prev) out.push_back(v < j ? v : v + 1);
    return out;
}

void validate(const FundamentalTuple& a) {
    if (a.dim < 0 || a.dim > max_general_dim) fail("tuple: dimension out of range");
    if (static_cast<int>(a.entries.size()) != fsig_size(a.dim))
        fail("tuple: entry count is not (dim+1)!");
}

FundamentalTuple h_map(const VTuple& t) {
    if (t.empty()) fail("h_map: empty tuple");
    int n = static_cast<int>(t.size()) - 1;
    if (n > max_general_dim) fail("h_map: dimension above the cap");
    FundamentalTuple a;
    a.dim = n;
    if (n == 0) {
        a.entries = {t[0]};
        return a;
    }
    a.entries.reserve(fsig_size(n));
    for (int j = 0; j <= n; ++j) {
        VTuple u;
        u.reserve(n);
        for (int p = 0; p <= n; ++p)
            if (p != j) u.push_back(t[p]);
        FundamentalTuple b = h_map(u);
        a.entries.insert(a.entries.end(), b.entries.begin(), b.entries.end());
    }
    return a;
}

VTuple h_inv(const FundamentalTuple& a) {
    validate(a);
    VTuple t;
    if (a.dim == 0) return {a.entries[0]};
    if (a.dim == 1) return {a.entries[1], a.entries[0]};
    VTuple tail = h_inv(proj_e(a, 0));            /* (t_1, ..., t_n) */
    VTuple head = h_inv(proj_e(a, a.dim));        /* (t_0, ..., t_{n-1}) */
    t.push_back(head[0]);
    t.insert(t.end(), tail.begin(), tail.end());
    if (h_map(t) != a) fail("h_inv: tuple is not subcomponent-simplicial");
    return t;
}

FundamentalTuple proj_e(const FundamentalTuple& a, int j) {
    validate(a);
    if (a.dim < 1) fail("proj_e: dimension 0 has no blocks");
    if (j < 0 || j > a.dim) fail("proj_e: index out of range");
    int block = fsig_size(a.dim - 1);
    FundamentalTuple b;
    b.dim = a.dim - 1;
    b.entries.assign(a.entries.begin() + j * block, a.entries.begin() + (j + 1) * block);
    return b;
}

FundamentalTuple degen_c(const FundamentalTuple& a, int j) {
    validate(a);
    if (j < 0 || j > a.dim) fail("degen_c: index out of range");
    if (a.dim + 1 > max_general_dim) fail("degen_c: dimension above the cap");
    FundamentalTuple r;
    r.dim = a.dim + 1;
    if (a.dim == 0) {
        r.entries = {a.entries[0], a.entries[0]};
        return r;
    }
    r.entries.reserve(fsig_size(r.dim));
    for (int p = 0; p <= r.dim; ++p) {
        FundamentalTuple block;
        if (p < j)
            block = degen_c(proj_e(a, p), j - 1);
        else if (p == j || p == j + 1)
            block = a;
        else
            block = degen_c(proj_e(a, p - 1), j);
        r.entries.insert(r.entries.end(), block.entries.begin(), block.entries.end());
    }
    return r;
}

bool is_component_simplicial(const FundamentalTuple& a) {
    validate(a);
    if (a.dim <= 1) return true;
    for (int p = 0; p < a.dim; ++p)
        for (int q = p + 1; q <= a.dim; ++q)
            if (proj_e(proj_e(a, q), p) != proj_e(proj_e(a, p), q - 1)) return false;
    return true;
}

bool is_subcomponent_simplicial(const FundamentalTuple& a) {
    validate(a);
    if (a.dim <= 1) return true;
    if (!is_component_simplicial(a)) return false;
    for (int j = 0; j <= a.dim; ++j)
        if (!is_subcomponent_simplicial(proj_e(a, j))) return false;
    return true;
}

void validate(const Relation& r) {
    if (r.columns.empty()) fail("relation: no columns");
    for (const auto& col : r.columns)
        if (col.empty()) fail("relation: empty support column");
    for (const VTuple& t : r.rows) {
        if (static_cast<int>(t.size()) != r.arity()) fail("relation: row arity mismatch");
        for (int p = 0; p < r.arity(); ++p)
            if (!r.columns[p].count(t[p])) fail("relation: row entry outside its column");
    }
}

Relation face(const Relation& r, int p) {
    validate(r);
    if (r.arity() < 2) fail("relation face: arity too small");
    if (p < 0 || p >= r.arity()) fail("relation face: index out of range");
    Relation out;
    for (int q = 0; q < r.arity(); ++q)
        if (q != p) out.columns.push_back(r.columns[q]);
    for (const VTuple& t : r.rows) {
        VTuple u;
        for (int q = 0; q < r.arity(); ++q)
            if (q != p) u.push_back(t[q]);
        out.rows.insert(std::move(u));
    }
    return out;
}

Relation degeneracy(const Relation& r, int p) {
    validate(r);
    if (p < 0 || p >= r.arity()) fail("relation degeneracy: index out of range");
    Relation out;
    for (int q = 0; q < r.arity(); ++q) {
        out.columns.push_back(r.columns[q]);
        if (q == p) out.columns.push_back(r.columns[q]);
    }
    for (const VTuple& t : r.rows) {
        VTuple u;
        for (int q = 0; q < r.arity(); ++q) {
            u.push_back(t[q]);
            if (q == p) u.push_back(t[q]);
        }
        out.rows.insert(std::move(u));
    }
    return out;
}

const std::set<FundamentalTuple>& SSimplex::elem() const { return nodes.at(full_mask(dim)); }

void validate(const SSimplex& y) {
    if (y.dim < 0 || y.dim > max_general_dim) fail("simplex: dimension out of range");
    if (static_cast<int>(y.fsig.size()) != y.dim + 1) fail("simplex: signature arity mismatch");
    for (const auto& col : y.fsig)
        if (col.empty()) fail("simplex: empty support column");
    if (y.nodes.size() != full_mask(y.dim)) fail("simplex: node table incomplete");
    for (const auto& [W, ts] : y.nodes) {
        if (W == 0 || W > full_mask(y.dim)) fail("simplex: node key out of range");
        std::vector<int> vs = mask_vertices(W);
        int m = static_cast<int>(vs.size()) - 1;
        std::vector<int> pattern = entry_columns(m);
        for (const FundamentalTuple& a : ts) {
            if (a.dim != m) fail("simplex: node tuple has wrong dimension");
            validate(a);
            for (size_t e = 0; e < a.entries.size(); ++e)
                if (!y.fsig[vs[pattern[e]]].count(a.entries[e]))
                    fail("simplex: entry outside its support column");
            for (int q = 0; q <= m && m >= 1; ++q)
                if (!y.nodes.at(drop_vertex(W, vs[q])).count(proj_e(a, q)))
                    fail("simplex: projection escapes the face node");
        }
    }
    if (y.compact) {
        for (const auto& [W, ts] : y.nodes)
            if (expand_node(y.compact->at(W)) != ts)
                fail("simplex: compact form disagrees with the node table");
    }
}

SSimplex face(const SSimplex& y, int j) {
    if (y.dim < 1) fail("face: dimension 0 has no faces");
    if (j < 0 || j > y.dim) fail("face: index out of range");
    SSimplex out;
    out.dim = y.dim - 1;
    for (int q = 0; q <= y.dim; ++q)
        if (q != j) out.fsig.push_back(y.fsig[q]);
    for (const auto& [W, ts] : y.nodes)
        if (!(W & (Mask{1} << j))) out.nodes[compress_mask(W, j)] = ts;
    if (y.compact) {
        CompactTable ct;
        for (const auto& [W, ts] : *y.compact)
            if (!(W & (Mask{1} << j))) ct[compress_mask(W, j)] = ts;
        out.compact = std::move(ct);
    }
    return out;
}

SSimplex degeneracy(const SSimplex& y, int j) {
    if (j < 0 || j > y.dim) fail("degeneracy: index out of range");
    if (y.dim + 1 > max_general_dim) fail("degeneracy: dimension above the cap");
    SSimplex out;
    out.dim = y.dim + 1;
    for (int q = 0; q <= y.dim; ++q) {
        out.fsig.push_back(y.fsig[q]);
        if (q == j) out.fsig.push_back(y.fsig[q]);
    }
    Mask bj = Mask{1} << j, bj1 = Mask{1} << (j + 1);
    for (Mask W2 = 1; W2 <= full_mask(out.dim); ++W2) {
        /* survivors of y: j and j+1 both come from old vertex j */
        Mask low = W2 & (bj - 1);
        Mask W = low | (((W2 >> (j + 1)) | ((W2 >> j) & 1)) << j);
        const auto& src = y.nodes.at(W);
        if ((W2 & bj) && (W2 & bj1)) {
            int p = std::popcount(low);
            std::set<FundamentalTuple> ts;
            for (const FundamentalTuple& a : src) ts.insert(degen_c(a, p));
            out.nodes[W2] = std::move(ts);
        } else {
            out.nodes[W2] = src;
        }
    }
    if (y.compact) {
        CompactTable ct;
        for (Mask W2 = 1; W2 <= full_mask(out.dim); ++W2) {
            Mask low = W2 & (bj - 1);
            Mask W = low | (((W2 >> (j + 1)) | ((W2 >> j) & 1)) << j);
            const auto& src = y.compact->at(W);
            if ((W2 & bj) && (W2 & bj1)) {
                int p = std::popcount(low);
                std::set<VTuple> ts;
                for (const VTuple& t : src) {
                    VTuple u = t;
                    u.insert(u.begin() + p, t[p]);
                    ts.insert(std::move(u));
                }
                ct[W2] = std::move(ts);
            } else {
                ct[W2] = src;
            }
        }
        out.compact = std::move(ct);
    }
    return out;
}

bool is_e_simplicial(const SSimplex& y) {
    if (y.compact) return true;
    if (y.dim <= 1) return true;
    for (const FundamentalTuple& a : y.elem())
        if (!is_component_simplicial(a)) return false;
    return true;
}

bool is_subface_simplicial(const SSimplex& y) {
    if (y.compact) return true;
    for (const auto& [W, ts] : y.nodes)
        for (const FundamentalTuple& a : ts)
            if (!is_component_simplicial(a)) return false;
    return true;
}

SSimplex e_hull(const SSimplex& y) {
    if (y.dim < 2) fail("e_hull: needs dimension at least 2");
    SSimplex out;
    out.dim = y.dim;
    out.fsig = y.fsig;
    out.nodes = y.nodes;

    std::vector<const std::set<FundamentalTuple>*> fnodes;
    for (int j = 0; j <= y.dim; ++j)
        fnodes.push_back(&y.nodes.at(drop_vertex(full_mask(y.dim), j)));
    std::set<FundamentalTuple> top;
    bool feasible = true;
    for (const auto* f : fnodes) feasible = feasible && !f->empty();
    if (feasible) {
        std::vector<std::set<FundamentalTuple>::const_iterator> it;
        for (const auto* f : fnodes) it.push_back(f->begin());
        while (true) {
            FundamentalTuple a;
            a.dim = y.dim;
            for (int j = 0; j <= y.dim; ++j)
                a.entries.insert(a.entries.end(), it[j]->entries.begin(), it[j]->entries.end());
            if (is_component_simplicial(a)) top.insert(std::move(a));
            int j = y.dim;
            while (j >= 0 && ++it[j] == fnodes[j]->end()) {
                it[j] = fnodes[j]->begin();
                --j;
            }
            if (j < 0) break;
        }
    }
    out.nodes[full_mask(y.dim)] = std::move(top);
    out.compact.reset();
    return out;
}

SSimplex t_min(const std::set<FundamentalTuple>& T, const std::vector<std::set<Label>>& fsig) {
    if (T.empty()) fail("t_min: empty element set");
    SSimplex y;
    y.dim = static_cast<int>(fsig.size()) - 1;
    y.fsig = fsig;
    for (Mask W = 1; W <= full_mask(y.dim); ++W) y.nodes[W];
    y.nodes[full_mask(y.dim)] = T;
    for (Mask W : masks_descending(y.dim)) {
        std::vector<int> vs = mask_vertices(W);
        if (vs.size() < 2) continue;
        for (const FundamentalTuple& a : y.nodes.at(W))
            for (size_t q = 0; q < vs.size(); ++q)
                y.nodes[drop_vertex(W, vs[q])].insert(proj_e(a, static_cast<int>(q)));
    }
    validate(y);
    return y;
}

SSimplex t_max(const std::set<FundamentalTuple>& T, const std::vector<std::set<Label>>& fsig) {
    if (T.empty()) fail("t_max: empty element set");
    SSimplex y;
    y.dim = static_cast<int>(fsig.size()) - 1;
    y.fsig = fsig;
    for (Mask W = 1; W < full_mask(y.dim); ++W) {
        std::vector<int> vs = mask_vertices(W);
        int m = static_cast<int>(vs.size()) - 1;
        std::vector<int> pattern = entry_columns(m);
        std::vector<const std::set<Label>*> cols;
        for (int c : pattern) cols.push_back(&fsig[vs[c]]);
        std::vector<std::set<Label>::const_iterator> it;
        for (const auto* c : cols) it.push_back(c->begin());
        std::set<FundamentalTuple> ts;
        while (true) {
            FundamentalTuple a;
            a.dim = m;
            for (auto i : it) a.entries.push_back(*i);
            ts.insert(std::move(a));
            int e = static_cast<int>(cols.size()) - 1;
            while (e >= 0 && ++it[e] == cols[e]->end()) {
                it[e] = cols[e]->begin();
                --e;
            }
            if (e < 0) break;
        }
        y.nodes[W] = std::move(ts);
    }
    y.nodes[full_mask(y.dim)] = T;
    validate(y);
    return y;
}

Relation vertex_relation(const SSimplex& y) {
    if (!is_subface_simplicial(y)) fail("vertex_relation: simplex is not subface-simplicial");
    Relation r;
    r.columns = y.fsig;
    if (y.compact) {
        r.rows = y.compact->at(full_mask(y.dim));
    } else {
        for (const FundamentalTuple& a : y.elem()) r.rows.insert(h_inv(a));
    }
    return r;
}

SSimplex minimal_simplex(const Relation& R) {
    validate(R);
    if (R.rows.empty()) fail("minimal_simplex: empty relation");
    int n = R.arity() - 1;
    if (n > max_general_dim) fail("minimal_simplex: dimension above the cap");
    SSimplex y;
    y.dim = n;
    y.fsig = R.columns;
    CompactTable ct;
    for (Mask W = 1; W <= full_mask(n); ++W) {
        std::set<VTuple>& ts = ct[W];
        for (const VTuple& t : R.rows) ts.insert(restrict_tuple(t, W));
        y.nodes[W] = expand_node(ts);
    }
    y.compact = std::move(ct);
    return y;
}

SSimplex max_simplex(const std::vector<std::set<Label>>& fsig) {
    if (fsig.empty()) fail("max_simplex: no columns");
    int n = static_cast<int>(fsig.size()) - 1;
    if (n > max_general_dim) fail("max_simplex: dimension above the cap");
    SSimplex y;
    y.dim = n;
    y.fsig = fsig;
    CompactTable ct;
    for (Mask W = 1; W <= full_mask(n); ++W) {
        std::vector<int> vs = mask_vertices(W);
        std::vector<std::set<Label>::const_iterator> it;
        for (int v : vs) it.push_back(fsig[v].begin());
        std::set<VTuple> ts;
        while (true) {
            VTuple t;
            for (auto i : it) t.push_back(*i);
            ts.insert(std::move(t));
            int p = static_cast<int>(vs.size()) - 1;
            while (p >= 0 && ++it[p] == fsig[vs[p]].end()) {
                it[p] = fsig[vs[p]].begin();
                --p;
            }
            if (p < 0) break;
        }
        y.nodes[W] = expand_node(ts);
        ct[W] = std::move(ts);
    }
    y.compact = std::move(ct);
    return y;
}

}  // namespace composer
