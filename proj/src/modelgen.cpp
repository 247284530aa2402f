#include "composer/modelgen.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace composer {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument(what);
}

VTuple drop_positions(const VTuple& t, const std::set<int>& deleted) {
    VTuple out;
    out.reserve(t.size() - deleted.size());
    for (int j = 0; j < static_cast<int>(t.size()); ++j)
        if (!deleted.count(j)) out.push_back(t[j]);
    return out;
}

}  // namespace

std::set<DetCondition> rules_closure(const std::set<DetCondition>& conds) {
    for (const auto& c : conds) validate(c);
    std::set<DetCondition> out = conds;
    std::vector<DetCondition> work(conds.begin(), conds.end());
    while (!work.empty()) {
        const DetCondition c = work.back();
        work.pop_back();
        DetCondition next[3];
        int count = 0;
        if (c.p >= 2) next[count++] = {c.p - 1, c.q - 1, c.m - 1};
        if (c.q - c.p >= 3) next[count++] = {c.p, c.q - 1, c.m - 1};
        if (c.q <= c.m - 2) next[count++] = {c.p, c.q, c.m - 1};
        for (int t = 0; t < count; ++t)
            if (out.insert(next[t]).second) work.push_back(next[t]);
    }
    return out;
}

ConditionSet required_conditions(int n, int i) {
    if (n < 2) fail("required_conditions: dimension must be at least 2");
    if (i < 0 || i > n + 1) fail("required_conditions: slot out of range");
    ConditionSet cs;
    std::set<DetCondition> det;
    if (i == 0) {
        cs.surjectivity = {{0, n}, {1, n}};
        det = {{1, 2, n}};
    } else if (i == 1) {
        cs.surjectivity = {{1, n}};
        det = {{0, 2, n}};
    } else if (i < n) {
        cs.surjectivity = {{i, n}, {i - 1, n}};
        det = {{i - 2, i + 1, n}};
    } else if (i == n) {
        cs.surjectivity = {{n - 1, n}};
        det = {{n - 2, n, n}};
    } else {
        cs.surjectivity = {{n, n}, {n - 1, n}};
        det = {{n - 2, n - 1, n}, {n - 1, n, n}};
    }
    cs.determinacy = rules_closure(det);
    return cs;
}

VTuple anchored_cover(const VTuple& b, const std::set<int>& deleted,
                      const VTuple& anchor) {
    const int arity = static_cast<int>(anchor.size());
    if (arity == 0) fail("anchored_cover: empty anchor");
    for (int j : deleted)
        if (j < 0 || j >= arity) fail("anchored_cover: deleted position out of range");
    if (static_cast<int>(b.size() + deleted.size()) != arity)
        fail("anchored_cover: arity mismatch");
    VTuple out(anchor.size());
    auto next = b.begin();
    for (int j = 0; j < arity; ++j)
        out[j] = deleted.count(j) ? anchor[j] : *next++;
    return out;
}

std::set<VTuple> image_rows(const std::set<VTuple>& rows, const MonotoneMap& alpha) {
    validate(alpha);
    std::set<VTuple> out;
    for (const auto& t : rows) {
        if (static_cast<int>(t.size()) != alpha.cod_size)
            fail("image_rows: arity does not match the map");
        VTuple u(alpha.vals.size());
        for (int j = 0; j < static_cast<int>(alpha.vals.size()); ++j)
            u[j] = t[alpha.vals[j]];
        out.insert(std::move(u));
    }
    return out;
}

std::set<VTuple> pq_fill(const std::set<VTuple>& rows, int p, int q) {
    std::set<VTuple> out;
    for (const auto& a : rows) {
        const int m = static_cast<int>(a.size()) - 1;
        if (p < 0 || p >= q || q > m) fail("pq_fill: slots out of range");
        for (const auto& b : rows) {
            if (b.size() != a.size()) fail("pq_fill: ragged rows");
            bool compat = true;
            for (int j = 0; j <= m && compat; ++j)
                compat = j == p || j == q || a[j] == b[j];
            if (!compat) continue;
            VTuple t = a;
            t[p] = b[p];
            out.insert(std::move(t));
        }
    }
    return out;
}

bool rows_pq_determinate(const std::set<VTuple>& rows, int p, int q) {
    return pq_fill(rows, p, q) == rows;
}

std::optional<DetFailure> find_det_failure(const std::set<VTuple>& rows,
                                           const ConditionSet& conds) {
    if (rows.empty()) fail("find_det_failure: no rows");
    const int arity = static_cast<int>(rows.begin()->size());
    for (const auto& c : conds.determinacy) {
        validate(c);
        for (const auto& alpha : all_monotone_maps(c.m + 1, arity))
            if (!rows_pq_determinate(image_rows(rows, alpha), c.p, c.q))
                return DetFailure{c, alpha};
    }
    return std::nullopt;
}

Relation enlarge(const Relation& r, const VTuple& anchor, const ConditionSet& conds) {
    validate(r);
    if (!r.rows.count(anchor)) fail("enlarge: anchor is not a row");
    if (rules_closure(conds.determinacy) != conds.determinacy)
        fail("enlarge: conditions are not rules-closed");
    const int n = r.arity() - 1;
    std::map<int, std::vector<std::pair<int, int>>> by_dim;
    for (const auto& c : conds.determinacy) {
        if (c.m > n) fail("enlarge: condition dimension exceeds the relation");
        by_dim[c.m].push_back({c.p, c.q});
    }

    Relation out = r;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [m, slots] : by_dim) {
            for (const auto& del : combinations(n + 1, n - m)) {
                const std::set<int> deleted(del.begin(), del.end());
                std::set<VTuple> s;
                for (const auto& t : out.rows) s.insert(drop_positions(t, deleted));
                for (const auto& [p, q] : slots)
                    for (const auto& w : pq_fill(s, p, q)) {
                        if (s.count(w)) continue;
                        if (out.rows.insert(anchored_cover(w, deleted, anchor)).second)
                            grew = true;
                    }
            }
        }
    }
    return out;
}

Overlap overlap_classify(const VTuple& t, const VTuple& u) {
    if (t.empty() || t.size() != u.size()) fail("overlap_classify: arity mismatch");
    Overlap o;
    for (int j = 0; j < static_cast<int>(t.size()); ++j)
        if (t[j] == u[j]) o.agreement.push_back(j);
    if (o.agreement.empty()) return o;
    o.lo = o.agreement.front();
    o.hi = o.agreement.back();
    o.kind = o.hi - o.lo + 1 == static_cast<int>(o.agreement.size())
                 ? OverlapKind::single
                 : OverlapKind::multiple;
    return o;
}

OverlapReport model_check_overlap(const Relation& r, OverlapMode mode) {
    validate(r);
    const int n = r.arity() - 1;
    if (n < 3) fail("model_check_overlap: arity must be at least 4");
    OverlapReport rep;
    for (auto a = r.rows.begin(); a != r.rows.end(); ++a)
        for (auto b = std::next(a); b != r.rows.end(); ++b) {
            const Overlap o = overlap_classify(*a, *b);
            const bool ok =
                o.kind == OverlapKind::disjoint ||
                (o.kind == OverlapKind::single &&
                 (mode == OverlapMode::slot_zero || o.hi == n));
            if (!ok) {
                rep.ok = false;
                rep.witness = {*a, *b};
                rep.detail = o;
                return rep;
            }
        }
    return rep;
}

Relation hypergroupoid_blocks(int n, int nblocks) {
    if (n < 3) fail("hypergroupoid_blocks: dimension must be at least 3");
    if (nblocks < 1) fail("hypergroupoid_blocks: need at least one block");
    const Label stride = static_cast<Label>((n + 1) * (n + 2) / 2);
    Relation r;
    r.columns.resize(n + 1);
    for (int k = 0; k < nblocks; ++k) {
        const Label base = stride * static_cast<Label>(k);
        for (int row = 0; row <= n; ++row) {
            const Label fresh = base + static_cast<Label>(n + 1 + row * (row - 1) / 2);
            VTuple t(n + 1);
            for (int j = 0; j <= n; ++j) {
                t[j] = j < row ? fresh + static_cast<Label>(j)
                               : base + static_cast<Label>(j);
                r.columns[j].insert(t[j]);
            }
            r.rows.insert(std::move(t));
        }
    }
    for (const auto mode : {OverlapMode::slot_zero, OverlapMode::slot_top})
        if (!model_check_overlap(r, mode).ok)
            throw std::logic_error("hypergroupoid_blocks: overlap self-check failed");
    ConditionSet all;
    for (int i = 0; i <= n + 1; ++i) {
        const ConditionSet cs = required_conditions(n, i);
        all.determinacy.insert(cs.determinacy.begin(), cs.determinacy.end());
    }
    if (find_det_failure(r.rows, all))
        throw std::logic_error("hypergroupoid_blocks: determinacy self-check failed");
    return r;
}

}  // namespace composer
