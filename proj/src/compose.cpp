#include "composer/compose.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace composer {

namespace {

[[noreturn]] void fail(const char* msg) { throw std::invalid_argument(msg); }

Mask full_mask(int dim) { return (Mask{1} << (dim + 1)) - 1; }

Mask drop_vertex(Mask W, int v) { return W & ~(Mask{1} << v); }

/* key of the parent node W inside the face omitting vertex j */
Mask compress_mask(Mask W, int j) {
    Mask low = (Mask{1} << j) - 1;
    return (W & low) | ((W >> (j + 1)) << j);
}

VTuple drop_at(const VTuple& t, int p) {
    VTuple u(t);
    u.erase(u.begin() + p);
    return u;
}

VTuple insert_at(const VTuple& t, int p, Label x) {
    VTuple u(t);
    u.insert(u.begin() + p, x);
    return u;
}

/* vertex rows of the node at W; the simplex must be subface-simplicial */
std::set<VTuple> rows_at(const SSimplex& y, Mask W) {
    if (y.compact) return y.compact->at(W);
    std::set<VTuple> rs;
    for (const FundamentalTuple& a : y.nodes.at(W)) rs.insert(h_inv(a));
    return rs;
}

/* ambient columns of the horn, each read off a face keeping it */
std::vector<std::set<Label>> horn_sig(const OpenHorn& h) {
    std::vector<std::set<Label>> sig(h.n + 2);
    for (int j = 0; j <= h.n + 1; ++j) {
        int p = -1;
        for (int c = 0; c <= h.n + 1 && p < 0; ++c)
            if (c != h.i && c != j) p = c;
        sig[j] = h.faces[p]->fsig[j - (j > p ? 1 : 0)];
    }
    return sig;
}

/* the i-th block of the completion of a family covering all slots
 * but i: e_{i-1} of the earlier entries, e_i of the later ones */
FundamentalTuple filler_block(const std::map<int, FundamentalTuple>& entries,
                              int i, int dim) {
    FundamentalTuple b;
    b.dim = dim - 1;
    for (int p = 0; p < dim; ++p) {
        FundamentalTuple blk =
            proj_e(entries.at(p < i ? p : p + 1), p < i ? i - 1 : i);
        b.entries.insert(b.entries.end(), blk.entries.begin(),
                         blk.entries.end());
    }
    return b;
}

/* the full tuple whose blocks are the family plus its filler at i */
FundamentalTuple complete_family(const std::map<int, FundamentalTuple>& entries,
                                 int i, int dim) {
    FundamentalTuple blk_i = filler_block(entries, i, dim);
    FundamentalTuple a;
    a.dim = dim;
    for (int j = 0; j <= dim; ++j) {
        const FundamentalTuple& blk = j == i ? blk_i : entries.at(j);
        a.entries.insert(a.entries.end(), blk.entries.begin(),
                         blk.entries.end());
    }
    return a;
}

/* Enumerate pairwise compatible families drawn from the given node
 * sets, one entry per listed slot, pruning on each new choice. */
void for_each_family(
    const std::vector<std::pair<int, const std::set<FundamentalTuple>*>>& src,
    const std::function<void(const std::map<int, FundamentalTuple>&)>& fn) {
    std::map<int, FundamentalTuple> chosen;
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == src.size()) {
            fn(chosen);
            return;
        }
        const int q = src[k].first;
        for (const FundamentalTuple& b : *src[k].second) {
            bool ok = true;
            for (const auto& [p, a] : chosen) {
                if (proj_e(b, p) != proj_e(a, q - 1)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen.emplace(q, b);
            self(self, k + 1);
            chosen.erase(q);
        }
    };
    rec(rec, 0);
}

}  // namespace

void validate(const DetCondition& c) {
    if (c.p < 0 || c.p >= c.q || c.q > c.m)
        fail("determinacy condition: need 0 <= p < q <= m");
}

void validate(const SurCondition& c) {
    if (c.j < 0 || c.j > c.m) fail("surjectivity condition: slot out of range");
}

std::string to_string(const DetCondition& c) {
    return std::to_string(c.p) + "," + std::to_string(c.q) + "." +
           std::to_string(c.m);
}

std::string to_string(const SurCondition& c) {
    return std::to_string(c.j) + "-sur." + std::to_string(c.m);
}

void validate(const OpenHorn& h) {
    if (h.n < 1) fail("open horn: dimension must be at least 2");
    if (h.i < 0 || h.i > h.n + 1) fail("open horn: slot out of range");
    if (static_cast<int>(h.faces.size()) != h.n + 2)
        fail("open horn: need n+2 face slots");
    for (int p = 0; p <= h.n + 1; ++p) {
        if (p == h.i) {
            if (h.faces[p]) fail("open horn: slot i must be empty");
            continue;
        }
        if (!h.faces[p]) fail("open horn: missing face");
        validate(*h.faces[p]);
        if (h.faces[p]->dim != h.n) fail("open horn: face dimension mismatch");
    }
    std::vector<std::set<Label>> sig = horn_sig(h);
    for (int p = 0; p <= h.n + 1; ++p) {
        if (p == h.i) continue;
        for (int j = 0; j <= h.n + 1; ++j)
            if (j != p && h.faces[p]->fsig[j - (j > p ? 1 : 0)] != sig[j])
                fail("open horn: face signatures do not match");
    }
    for (int p = 0; p <= h.n + 1; ++p)
        for (int q = p + 1; q <= h.n + 1; ++q) {
            if (p == h.i || q == h.i) continue;
            if (face(*h.faces[q], p) != face(*h.faces[p], q - 1))
                fail("open horn: faces do not match");
        }
}

OpenHorn horn_of(const SSimplex& w, int i) {
    if (w.dim < 2) fail("horn_of: needs dimension at least 2");
    if (i < 0 || i > w.dim) fail("horn_of: slot out of range");
    OpenHorn h;
    h.n = w.dim - 1;
    h.i = i;
    h.faces.resize(w.dim + 1);
    for (int p = 0; p <= w.dim; ++p)
        if (p != i) h.faces[p] = face(w, p);
    return h;
}

void validate(const PartialElement& pe) {
    validate(pe.host);
    if (pe.entries.empty()) fail("partial element: no entries");
    for (const auto& [j, a] : pe.entries) {
        if (j < 0 || j > pe.host.dim) fail("partial element: slot out of range");
        validate(a);
        if (a.dim != pe.host.dim - 1)
            fail("partial element: entry dimension mismatch");
    }
    for (const auto& [q, aq] : pe.entries)
        for (const auto& [p, ap] : pe.entries) {
            if (p >= q) continue;
            if (proj_e(aq, p) != proj_e(ap, q - 1))
                fail("partial element: entries are not compatible");
        }
}

FundamentalTuple unique_filler(const PartialElement& pe, int i) {
    if (pe.host.dim < 2) fail("unique_filler: needs dimension at least 2");
    validate(pe);
    if (i < 0 || i > pe.host.dim) fail("unique_filler: slot out of range");
    if (static_cast<int>(pe.entries.size()) != pe.host.dim ||
        pe.entries.count(i))
        fail("unique_filler: entries must cover every slot but i");
    return filler_block(pe.entries, i, pe.host.dim);
}

FundamentalTuple pq_fill(const SSimplex& y, const FundamentalTuple& b_p,
                         const FundamentalTuple& b_q, int p, int q) {
    if (p < 0 || p >= q || q > y.dim) fail("pq_fill: slots out of range");
    if (!is_subface_simplicial(y))
        fail("pq_fill: simplex is not subface-simplicial");
    if (b_p.dim != y.dim - 1 || b_q.dim != y.dim - 1)
        fail("pq_fill: face dimension mismatch");
    const Mask full = full_mask(y.dim);
    if (!y.nodes.at(drop_vertex(full, p)).count(b_p) ||
        !y.nodes.at(drop_vertex(full, q)).count(b_q))
        fail("pq_fill: not elements of the faces");
    VTuple u = h_inv(b_p);
    VTuple v = h_inv(b_q);
    FundamentalTuple b = h_map(insert_at(u, p, v[p]));
    if (proj_e(b, p) != b_p || proj_e(b, q) != b_q)
        fail("pq_fill: faces are not compatible");
    return b;
}

Relation comp_rows(const std::vector<std::optional<Relation>>& faces, int i,
                   bool validate_faces) {
    const int m = static_cast<int>(faces.size());
    if (m < 3) fail("comp_rows: need at least three slots");
    if (i < 0 || i >= m) fail("comp_rows: slot out of range");
    for (int p = 0; p < m; ++p) {
        if (p == i) {
            if (faces[p]) fail("comp_rows: slot i must be empty");
            continue;
        }
        if (!faces[p]) fail("comp_rows: missing face");
        if (faces[p]->arity() != m - 1) fail("comp_rows: face arity mismatch");
    }

    std::vector<std::set<Label>> cols(m);
    for (int j = 0; j < m; ++j) {
        int p = -1;
        for (int c = 0; c < m && p < 0; ++c)
            if (c != i && c != j) p = c;
        cols[j] = faces[p]->columns[j - (j > p ? 1 : 0)];
    }
    for (int p = 0; p < m; ++p) {
        if (p == i) continue;
        for (int j = 0; j < m; ++j)
            if (j != p && faces[p]->columns[j - (j > p ? 1 : 0)] != cols[j])
                fail("comp_rows: face columns do not match");
    }
    if (validate_faces)
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) {
                if (p == i || q == i) continue;
                if (face(*faces[q], p) != face(*faces[p], q - 1))
                    fail("comp_rows: faces do not match");
            }

    const int p0 = i == 0 ? 1 : 0;
    Relation w;
    w.columns = cols;
    for (const VTuple& r : faces[p0]->rows)
        for (Label x : cols[p0]) {
            VTuple t = insert_at(r, p0, x);
            bool ok = true;
            for (int p = 0; p < m && ok; ++p) {
                if (p == i || p == p0) continue;
                ok = faces[p]->rows.count(drop_at(t, p)) > 0;
            }
            if (ok) w.rows.insert(std::move(t));
        }
    return w;
}

SSimplex comp_ni(const OpenHorn& h) {
    validate(h);
    const int wdim = h.n + 1;
    const Mask full = full_mask(wdim);

    SSimplex w;
    w.dim = wdim;
    w.fsig = horn_sig(h);

    bool all_compact = true;
    for (int p = 0; p <= wdim; ++p)
        if (p != h.i && !h.faces[p]->compact) all_compact = false;

    /* every node whose deleted set is not exactly {i} sits in a face */
    for (Mask W = 1; W < full; ++W) {
        Mask gone = full & ~W;
        if (gone == (Mask{1} << h.i)) continue;
        int p = -1;
        for (int v = 0; v <= wdim && p < 0; ++v)
            if (v != h.i && (gone & (Mask{1} << v))) p = v;
        w.nodes[W] = h.faces[p]->nodes.at(compress_mask(W, p));
    }

    if (all_compact) {
        std::vector<std::optional<Relation>> frel(wdim + 1);
        for (int p = 0; p <= wdim; ++p) {
            if (p == h.i) continue;
            Relation r;
            r.columns = h.faces[p]->fsig;
            r.rows = h.faces[p]->compact->at(full_mask(h.n));
            frel[p] = std::move(r);
        }
        Relation join = comp_rows(frel, h.i, false);

        CompactTable ct;
        for (Mask W = 1; W < full; ++W) {
            Mask gone = full & ~W;
            if (gone == (Mask{1} << h.i)) continue;
            int p = -1;
            for (int v = 0; v <= wdim && p < 0; ++v)
                if (v != h.i && (gone & (Mask{1} << v))) p = v;
            ct[W] = h.faces[p]->compact->at(compress_mask(W, p));
        }
        std::set<VTuple> di_rows;
        std::set<FundamentalTuple> top, di;
        for (const VTuple& t : join.rows) {
            VTuple r = drop_at(t, h.i);
            top.insert(h_map(t));
            di.insert(h_map(r));
            di_rows.insert(std::move(r));
        }
        ct[full] = join.rows;
        ct[drop_vertex(full, h.i)] = std::move(di_rows);
        w.nodes[full] = std::move(top);
        w.nodes[drop_vertex(full, h.i)] = std::move(di);
        w.compact = std::move(ct);
    } else {
        if (wdim > max_general_dim) fail("comp_ni: dimension cap exceeded");
        std::vector<std::pair<int, const std::set<FundamentalTuple>*>> src;
        for (int p = 0; p <= wdim; ++p)
            if (p != h.i) src.emplace_back(p, &h.faces[p]->elem());
        std::set<FundamentalTuple> top, di;
        for_each_family(src, [&](const std::map<int, FundamentalTuple>& fam) {
            FundamentalTuple a = complete_family(fam, h.i, wdim);
            di.insert(proj_e(a, h.i));
            top.insert(std::move(a));
        });
        w.nodes[full] = std::move(top);
        w.nodes[drop_vertex(full, h.i)] = std::move(di);
    }

    validate(w);
    return w;
}

bool is_i_surjective(const SSimplex& y, int i) {
    if (y.dim < 1) fail("is_i_surjective: needs dimension at least 1");
    if (i < 0 || i > y.dim) fail("is_i_surjective: slot out of range");
    const Mask full = full_mask(y.dim);
    if (y.compact) {
        std::set<VTuple> image;
        for (const VTuple& t : y.compact->at(full))
            image.insert(drop_at(t, i));
        for (const VTuple& r : y.compact->at(drop_vertex(full, i)))
            if (!image.count(r)) return false;
        return true;
    }
    std::set<FundamentalTuple> image;
    for (const FundamentalTuple& a : y.elem()) image.insert(proj_e(a, i));
    for (const FundamentalTuple& b : y.nodes.at(drop_vertex(full, i)))
        if (!image.count(b)) return false;
    return true;
}

bool is_ni_composition(const SSimplex& w, int i) {
    if (w.dim < 2) fail("is_ni_composition: needs dimension at least 2");
    if (i < 0 || i > w.dim) fail("is_ni_composition: slot out of range");
    if (!is_e_simplicial(w)) return false;
    if (!is_i_surjective(w, i)) return false;

    const Mask full = full_mask(w.dim);
    if (is_subface_simplicial(w)) {
        /* families off i are gluings t with every deletion but the
         * i-th in the matching face rows */
        std::vector<std::set<VTuple>> frows(w.dim + 1);
        for (int p = 0; p <= w.dim; ++p)
            if (p != i) frows[p] = rows_at(w, drop_vertex(full, p));
        const std::set<VTuple> di = rows_at(w, drop_vertex(full, i));
        const std::set<VTuple> top = rows_at(w, full);
        const int p0 = i == 0 ? 1 : 0;
        for (const VTuple& r : frows[p0])
            for (Label x : w.fsig[p0]) {
                VTuple t = insert_at(r, p0, x);
                bool family = true;
                for (int p = 0; p <= w.dim && family; ++p) {
                    if (p == i || p == p0) continue;
                    family = frows[p].count(drop_at(t, p)) > 0;
                }
                if (!family) continue;
                if (!di.count(drop_at(t, i)) || !top.count(t)) return false;
            }
        return true;
    }

    std::vector<std::pair<int, const std::set<FundamentalTuple>*>> src;
    for (int p = 0; p <= w.dim; ++p)
        if (p != i) src.emplace_back(p, &w.nodes.at(drop_vertex(full, p)));
    const std::set<FundamentalTuple>& di = w.nodes.at(drop_vertex(full, i));
    bool ok = true;
    for_each_family(src, [&](const std::map<int, FundamentalTuple>& fam) {
        if (!ok) return;
        FundamentalTuple a = complete_family(fam, i, w.dim);
        ok = di.count(proj_e(a, i)) > 0 && w.elem().count(a) > 0;
    });
    return ok;
}

bool degenerate_composition_check(const SSimplex& y, int k, int i) {
    if (k < 0 || k > y.dim) fail("degenerate_composition_check: bad slot");
    return is_ni_composition(degeneracy(y, k), i);
}

bool is_A_determinate(const SSimplex& y, const std::set<int>& A) {
    if (!is_subface_simplicial(y))
        fail("is_A_determinate: simplex is not subface-simplicial");
    if (static_cast<int>(A.size()) < 2)
        fail("is_A_determinate: need at least two slots");
    if (static_cast<int>(A.size()) > y.dim)
        fail("is_A_determinate: slots must be a proper subset");
    for (int j : A)
        if (j < 0 || j > y.dim) fail("is_A_determinate: slot out of range");

    const Mask full = full_mask(y.dim);
    auto it = A.begin();
    const int p = *it++;
    const int q = *it;
    const std::set<VTuple> rp = rows_at(y, drop_vertex(full, p));
    const std::set<VTuple> rq = rows_at(y, drop_vertex(full, q));
    const std::set<VTuple> top = rows_at(y, full);
    std::map<int, std::set<VTuple>> rest;
    for (int j : A)
        if (j != p && j != q) rest[j] = rows_at(y, drop_vertex(full, j));

    for (const VTuple& a : rp)
        for (const VTuple& b : rq) {
            if (drop_at(a, q - 1) != drop_at(b, p)) continue;
            VTuple t = insert_at(a, p, b[p]);
            bool family = true;
            for (const auto& [j, rows] : rest)
                if (!rows.count(drop_at(t, j))) {
                    family = false;
                    break;
                }
            if (family && !top.count(t)) return false;
        }
    return true;
}

bool is_pq_determinate(const SSimplex& y, int p, int q) {
    if (p < 0 || p >= q) fail("is_pq_determinate: need p < q");
    return is_A_determinate(y, std::set<int>{p, q});
}

ExpansionReport expansion_compare(const SSimplex& w, int i) {
    if (w.dim < 2) fail("expansion_compare: needs dimension at least 2");
    if (i < 0 || i > w.dim) fail("expansion_compare: slot out of range");
    ExpansionReport rep;
    rep.e_simplicial = is_e_simplicial(w);
    rep.i_surjective = is_i_surjective(w, i);

    SSimplex wt = comp_ni(horn_of(w, i));
    const Mask full = full_mask(w.dim);
    const std::set<FundamentalTuple>& top = w.elem();
    const std::set<FundamentalTuple>& topt = wt.elem();
    const std::set<FundamentalTuple>& fi = w.nodes.at(drop_vertex(full, i));
    const std::set<FundamentalTuple>& fit = wt.nodes.at(drop_vertex(full, i));

    rep.sig_equal = true;
    SSimplex di = face(w, i);
    SSimplex dit = face(wt, i);
    for (Mask W = 1; W < full_mask(di.dim); ++W)
        if (di.nodes.at(W) != dit.nodes.at(W)) rep.sig_equal = false;

    rep.top_subset =
        std::includes(topt.begin(), topt.end(), top.begin(), top.end());
    rep.top_equal = top == topt;
    rep.face_subset = std::includes(fit.begin(), fit.end(), fi.begin(),
                                    fi.end());
    rep.face_equal = fi == fit;
    return rep;
}

FillArrayResult fill_array(const ConditionSet& conditions,
                           const std::map<int, std::set<int>>& seed, int n,
                           int i) {
    if (n < 1) fail("fill_array: dimension must be at least 1");
    if (i < 0 || i > n + 1) fail("fill_array: slot out of range");
    const int nrows = n + 2;
    const int ncols = n + 1;
    for (const auto& [r, cs] : seed) {
        if (r < 0 || r >= nrows) fail("fill_array: seed row out of range");
        for (int c : cs)
            if (c < 0 || c >= ncols) fail("fill_array: seed column out of range");
    }
    for (const DetCondition& d : conditions.determinacy) validate(d);
    for (const SurCondition& s : conditions.surjectivity) validate(s);

    FillArrayResult res;
    res.cell_step.assign(nrows, std::vector<int>(ncols, 0));
    std::vector<char> filled(nrows, 0);

    /* cell c of row r and its mirror both carry the subface shared by
     * rows r and (c < r ? c : c + 1) */
    auto mark = [&](int r, int c, int s) {
        int o = c < r ? c : c + 1;
        int lo = std::min(r, o), hi = std::max(r, o);
        if (!res.cell_step[hi][lo]) res.cell_step[hi][lo] = s;
        if (!res.cell_step[lo][hi - 1]) res.cell_step[lo][hi - 1] = s;
    };
    auto known = [&](int r) {
        std::set<int> ks;
        for (int c = 0; c < ncols; ++c)
            if (res.cell_step[r][c]) ks.insert(c);
        return ks;
    };

    int step = 0;
    if (!seed.empty()) {
        step = 1;
        for (const auto& [r, cs] : seed)
            for (int c : cs) mark(r, c, 1);
        res.steps.push_back({1, -1, "given"});
    }
    for (int r = 0; r < nrows; ++r)
        if (static_cast<int>(known(r).size()) == ncols) filled[r] = 1;

    /* surjectivity fills steer knowledge toward the determinacy cells */
    std::set<int> targets;
    for (const DetCondition& d : conditions.determinacy)
        if (d.m == n) {
            targets.insert(d.p);
            targets.insert(d.q);
        }
    if (targets.empty()) {
        if (i == 0)
            targets = {1, 2};
        else if (i == 1)
            targets = {0, 2};
        else if (i < n)
            targets = {i - 2, i + 1};
        else if (i == n)
            targets = {n - 2, n};
        else
            targets = {n - 2, n - 1, n};
    }

    auto fill_row = [&](int r, const std::string& rule) {
        ++step;
        for (int c = 0; c < ncols; ++c) mark(r, c, step);
        filled[r] = 1;
        res.steps.push_back({step, r, rule});
    };

    while (true) {
        bool open = false;
        for (int r = 0; r < nrows; ++r)
            if (r != i && !filled[r]) open = true;
        if (!open) break;

        int best = -1, best_score = -1;
        std::string best_rule;
        for (int r = 0; r < nrows; ++r) {
            if (r == i || filled[r]) continue;
            std::set<int> ks = known(r);
            if (ks.size() != 1) continue;
            const int j = *ks.begin();
            if (!conditions.surjectivity.count({j, n})) continue;
            int score = 0;
            for (int x = 0; x < nrows; ++x) {
                if (x == r || filled[x]) continue;
                int c = x > r ? r : r - 1;
                if (targets.count(c) && !res.cell_step[x][c]) ++score;
            }
            if (score > best_score) {
                best_score = score;
                best = r;
                best_rule = to_string(SurCondition{j, n});
            }
        }
        if (best >= 0) {
            fill_row(best, best_rule);
            continue;
        }

        int pick = -1;
        std::string rule;
        for (int r = 0; r < nrows && pick < 0; ++r) {
            if (r == i || filled[r]) continue;
            std::set<int> ks = known(r);
            for (const DetCondition& d : conditions.determinacy) {
                if (d.m != n) continue;
                if (ks.count(d.p) && ks.count(d.q)) {
                    pick = r;
                    rule = to_string(d);
                    break;
                }
            }
        }
        if (pick >= 0) {
            fill_row(pick, rule);
            continue;
        }

        for (int r = 0; r < nrows; ++r)
            if (r != i && !filled[r]) res.stuck_rows.insert(r);
        return res;
    }

    if (!filled[i]) res.steps.push_back({++step, i, "composition"});
    res.complete = true;
    return res;
}

}  // namespace composer
