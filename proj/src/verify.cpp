#include "composer/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "composer/modelgen.hpp"

namespace composer {

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

constexpr std::size_t witness_cap = 100;

long long binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    long long r = 1;
    for (int t = 1; t <= b; ++t) r = r * (a - b + t) / t;
    return r;
}

struct RelLess {
    bool operator()(const Relation& a, const Relation& b) const {
        if (a.columns != b.columns) return a.columns < b.columns;
        return a.rows < b.rows;
    }
};

std::string join_ints(const std::vector<int>& v, int mask_at = -1) {
    std::ostringstream oss;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j > 0) oss << ',';
        if (static_cast<int>(j) == mask_at)
            oss << '-';
        else
            oss << v[j];
    }
    return oss.str();
}

std::string describe_entry(const SimplexEntry& e, std::size_t idx) {
    std::ostringstream oss;
    oss << "idx=" << idx << (e.degenerate ? " degenerate" : " strict");
    if (e.rep) oss << " map=(" << join_ints(e.rep->vals) << ")";
    return oss.str();
}

/* Visit every family (x_0..x_m) of (m-1)-simplex indices, slot `skip`
 * omitted (or none when skip is -1), with d_p(x_q) = d_{q-1}(x_p) for
 * chosen p < q. Slots fill in ascending order; each new slot draws
 * its candidates from an index over the first constraint and filters
 * by the rest, so the work is bounded by the number of compatible
 * partial families times the slot count. */
void for_each_family(const TruncatedComplex& C, int m, int skip,
                     const std::function<void(const std::vector<int>&)>& visit) {
    const auto& layer = C.cells[m - 1];
    int sz = static_cast<int>(layer.size());
    std::vector<int> slots;
    for (int j = 0; j <= m; ++j)
        if (j != skip) slots.push_back(j);
    std::vector<std::map<int, std::vector<int>>> face_index;
    if (m >= 2) {
        face_index.resize(m);
        for (int idx = 0; idx < sz; ++idx)
            for (int j = 0; j <= m - 1; ++j)
                face_index[j][layer[idx].faces[j]].push_back(idx);
    }
    std::vector<int> fam(m + 1, -1);
    std::function<void(std::size_t)> extend = [&](std::size_t at) {
        if (at == slots.size()) {
            visit(fam);
            return;
        }
        int q = slots[at];
        auto take = [&](int cand) {
            for (std::size_t b = 1; b < at; ++b) {
                int p = slots[b];
                if (layer[cand].faces[p] != layer[fam[p]].faces[q - 1]) return;
            }
            fam[q] = cand;
            extend(at + 1);
            fam[q] = -1;
        };
        if (at == 0 || m == 1) {
            /* vertices have no faces, so dimension 1 families are free */
            for (int cand = 0; cand < sz; ++cand) {
                fam[q] = cand;
                extend(at + 1);
                fam[q] = -1;
            }
        } else {
            int p0 = slots[0];
            auto it = face_index[p0].find(layer[fam[p0]].faces[q - 1]);
            if (it == face_index[p0].end()) return;
            for (int cand : it->second) take(cand);
        }
    };
    extend(0);
}

int fill_one(const TruncatedComplex& C, int dim, int slot,
             const std::map<int, int>& known) {
    int found = -1;
    for (int idx = 0; idx < static_cast<int>(C.cells[dim].size()); ++idx) {
        const auto& e = C.cells[dim][idx];
        bool match = true;
        for (auto [s, v] : known)
            if (s != slot && e.faces[s] != v) {
                match = false;
                break;
            }
        if (!match) continue;
        if (found >= 0)
            throw std::runtime_error("extended_fill: multiple fillers share the known faces");
        found = idx;
    }
    if (found < 0)
        throw std::runtime_error("extended_fill: no filler matches the known faces");
    return found;
}

/* Known faces of the face at w: below w through d_t d_w = d_{w-1} d_t,
 * at or above w through d_t d_w = d_w d_{t+1}. */
std::map<int, int> subface_known(const TruncatedComplex& C, int dim,
                                 const std::map<int, int>& known, int w) {
    std::map<int, int> out;
    for (int t = 0; t <= dim - 1; ++t) {
        if (t < w) {
            auto it = known.find(t);
            if (it != known.end())
                out[t] = C.cells[dim - 1][it->second].faces[w - 1];
        } else {
            auto it = known.find(t + 1);
            if (it != known.end())
                out[t] = C.cells[dim - 1][it->second].faces[w];
        }
    }
    return out;
}

int fill_typed(const TruncatedComplex& C, int dim, std::map<int, int> known,
               std::set<int> B, int np, int ip, std::vector<int>& path,
               std::vector<ScheduleStep>& steps) {
    for (;;) {
        if (B.size() == 1) {
            int j = *B.begin();
            int idx = fill_one(C, dim, j, known);
            steps.push_back({path, dim, j});
            return idx;
        }
        auto p = deletion_type(B, np, ip);
        if (!p)
            throw std::logic_error("extended_fill: schedule lost the deletion type");
        int w = *p == 1 ? *B.rbegin() : *B.begin();
        path.push_back(w);
        known[w] = fill_typed(C, dim - 1, subface_known(C, dim, known, w),
                              delsub_of_face(B, w), np, ip, path, steps);
        path.pop_back();
        B.erase(w);
        if (*p > 1) {
            ++np;
            ++ip;
        }
    }
}

int fill_greedy(const TruncatedComplex& C, int dim, std::map<int, int> known,
                std::set<int> B, std::vector<int>& path,
                std::vector<ScheduleStep>& steps) {
    while (B.size() > 1) {
        int w = *B.rbegin();
        path.push_back(w);
        known[w] = fill_greedy(C, dim - 1, subface_known(C, dim, known, w),
                               delsub_of_face(B, w), path, steps);
        path.pop_back();
        B.erase(w);
    }
    int j = *B.begin();
    int idx = fill_one(C, dim, j, known);
    steps.push_back({path, dim, j});
    return idx;
}

}  // namespace

void validate(const TruncatedComplex& C) {
    if (C.top_dim < 0 || static_cast<int>(C.cells.size()) != C.top_dim + 1)
        fail("complex: cell table does not match the top dimension");
    for (int m = 0; m <= C.top_dim; ++m) {
        int below = m > 0 ? static_cast<int>(C.cells[m - 1].size()) : 0;
        int above = m < C.top_dim ? static_cast<int>(C.cells[m + 1].size()) : 0;
        for (const auto& e : C.cells[m]) {
            if (static_cast<int>(e.faces.size()) != (m == 0 ? 0 : m + 1))
                fail("complex: face table has the wrong width");
            for (int v : e.faces)
                if (v < 0 || v >= below) fail("complex: face index out of range");
            if (m < C.top_dim) {
                if (static_cast<int>(e.degens.size()) != m + 1)
                    fail("complex: degeneracy table has the wrong width");
                for (int v : e.degens)
                    if (v < 0 || v >= above)
                        fail("complex: degeneracy index out of range");
            } else if (!e.degens.empty()) {
                fail("complex: degeneracies above the top dimension");
            }
            if (e.rows) {
                validate(*e.rows);
                if (e.rows->arity() != m + 1)
                    fail("complex: row arity does not match the dimension");
            }
            if (e.rep && static_cast<int>(e.rep->vals.size()) != m + 1)
                fail("complex: representative map has the wrong domain");
        }
    }
    for (int m = 2; m <= C.top_dim; ++m)
        for (const auto& e : C.cells[m])
            for (int q = 1; q <= m; ++q)
                for (int p = 0; p < q; ++p)
                    if (C.cells[m - 1][e.faces[q]].faces[p] !=
                        C.cells[m - 1][e.faces[p]].faces[q - 1])
                        fail("complex: face identity broken");
    for (int m = 0; m < C.top_dim; ++m) {
        for (int w = 0; w < static_cast<int>(C.cells[m].size()); ++w) {
            const auto& we = C.cells[m][w];
            for (int j = 0; j <= m; ++j) {
                const auto& te = C.cells[m + 1][we.degens[j]];
                for (int p = 0; p <= m + 1; ++p) {
                    int expect;
                    if (p == j || p == j + 1)
                        expect = w;
                    else if (p < j)
                        expect = C.cells[m - 1][we.faces[p]].degens[j - 1];
                    else
                        expect = C.cells[m - 1][we.faces[p - 1]].degens[j];
                    if (te.faces[p] != expect)
                        fail("complex: face-degeneracy identity broken");
                }
            }
        }
    }
    for (int m = 0; m + 2 <= C.top_dim; ++m)
        for (const auto& e : C.cells[m])
            for (int q = 0; q <= m; ++q)
                for (int p = 0; p <= q; ++p)
                    if (C.cells[m + 1][e.degens[q]].degens[p] !=
                        C.cells[m + 1][e.degens[p]].degens[q + 1])
                        fail("complex: degeneracy identity broken");
    for (int m = 1; m <= C.top_dim; ++m) {
        std::vector<char> hit(C.cells[m].size(), 0);
        for (const auto& w : C.cells[m - 1])
            for (int v : w.degens) hit[v] = 1;
        for (std::size_t idx = 0; idx < C.cells[m].size(); ++idx)
            if (C.cells[m][idx].degenerate != static_cast<bool>(hit[idx]))
                fail("complex: degenerate flag does not match the images");
    }
    for (const auto& e : C.cells[0])
        if (e.degenerate) fail("complex: degenerate vertex");
}

long long simplex_count(int n) {
    if (n < 1 || n > 31) fail("simplex_count: n out of range");
    long long total = 1;
    for (int p = 1; p <= n; ++p) {
        long long c = binomial(n + 1, p);
        total += c * c;
    }
    return total;
}

TruncatedComplex generate_complex(const Relation& R) {
    validate(R);
    if (R.rows.empty()) fail("generate_complex: the relation has no rows");
    int n = R.arity() - 1;
    TruncatedComplex C;
    C.top_dim = n;
    C.cells.resize(n + 1);
    std::vector<std::map<Relation, int, RelLess>> index(n + 1);
    for (int m = 0; m <= n; ++m)
        for (const auto& alpha : all_monotone_maps(m + 1, n + 1)) {
            Relation img;
            img.columns.reserve(m + 1);
            for (int v : alpha.vals) img.columns.push_back(R.columns[v]);
            img.rows = image_rows(R.rows, alpha);
            auto ins = index[m].emplace(img, static_cast<int>(C.cells[m].size()));
            if (!ins.second) continue;
            SimplexEntry e;
            e.rows = std::move(img);
            e.rep = alpha;
            C.cells[m].push_back(std::move(e));
        }
    for (int m = 1; m <= n; ++m)
        for (auto& e : C.cells[m]) {
            e.faces.resize(m + 1);
            for (int j = 0; j <= m; ++j) {
                auto it = index[m - 1].find(face(*e.rows, j));
                if (it == index[m - 1].end())
                    throw std::logic_error("generate_complex: face image missing");
                e.faces[j] = it->second;
            }
        }
    for (int m = 0; m < n; ++m)
        for (auto& e : C.cells[m]) {
            e.degens.resize(m + 1);
            for (int j = 0; j <= m; ++j) {
                auto it = index[m + 1].find(degeneracy(*e.rows, j));
                if (it == index[m + 1].end())
                    throw std::logic_error("generate_complex: degeneracy image missing");
                e.degens[j] = it->second;
                C.cells[m + 1][it->second].degenerate = true;
            }
        }
    return C;
}

TruncatedComplex generate_complex(const SSimplex& y) {
    validate(y);
    if (!is_subface_simplicial(y))
        fail("generate_complex: the simplex is not subface-simplicial");
    Relation R = vertex_relation(y);
    if (!(minimal_simplex(R) == y))
        fail("generate_complex: the simplex is not minimal over its vertex rows");
    return generate_complex(R);
}

TruncatedComplex coskeleton(const TruncatedComplex& C, int m_target) {
    validate(C);
    if (m_target < 0) fail("coskeleton: negative target");
    TruncatedComplex R = C;
    for (int k = R.top_dim + 1; k <= m_target; ++k) {
        R.cells.emplace_back();
        std::map<std::vector<int>, int> kernel;
        for_each_family(R, k, -1, [&](const std::vector<int>& fam) {
            SimplexEntry e;
            e.faces = fam;
            kernel.emplace(fam, static_cast<int>(R.cells[k].size()));
            R.cells[k].push_back(std::move(e));
        });
        for (int w = 0; w < static_cast<int>(R.cells[k - 1].size()); ++w) {
            auto& we = R.cells[k - 1][w];
            we.degens.assign(k, 0);
            for (int j = 0; j <= k - 1; ++j) {
                std::vector<int> fam(k + 1);
                for (int p = 0; p <= k; ++p) {
                    if (p == j || p == j + 1)
                        fam[p] = w;
                    else if (p < j)
                        fam[p] = R.cells[k - 2][we.faces[p]].degens[j - 1];
                    else
                        fam[p] = R.cells[k - 2][we.faces[p - 1]].degens[j];
                }
                auto it = kernel.find(fam);
                if (it == kernel.end())
                    throw std::logic_error("coskeleton: degenerate family missing from the kernel");
                we.degens[j] = it->second;
                R.cells[k][it->second].degenerate = true;
            }
        }
        R.top_dim = k;
    }
    return R;
}

TruncatedComplex standard_simplex_complex(int k, int top_dim) {
    if (k < 0) fail("standard_simplex_complex: negative vertex bound");
    if (top_dim < 0) fail("standard_simplex_complex: negative top dimension");
    TruncatedComplex C;
    C.top_dim = top_dim;
    C.cells.resize(top_dim + 1);
    std::vector<std::map<std::vector<int>, int>> index(top_dim + 1);
    for (int m = 0; m <= top_dim; ++m)
        for (const auto& alpha : all_monotone_maps(m + 1, k + 1)) {
            index[m].emplace(alpha.vals, static_cast<int>(C.cells[m].size()));
            SimplexEntry e;
            Relation rel;
            for (int v : alpha.vals) {
                rel.columns.push_back({static_cast<Label>(v)});
            }
            rel.rows.insert(VTuple(alpha.vals.begin(), alpha.vals.end()));
            e.rows = std::move(rel);
            e.rep = alpha;
            C.cells[m].push_back(std::move(e));
        }
    for (int m = 1; m <= top_dim; ++m)
        for (auto& e : C.cells[m]) {
            e.faces.resize(m + 1);
            for (int j = 0; j <= m; ++j) {
                auto t = e.rep->vals;
                t.erase(t.begin() + j);
                e.faces[j] = index[m - 1].at(t);
            }
        }
    for (int m = 0; m < top_dim; ++m)
        for (auto& e : C.cells[m]) {
            e.degens.resize(m + 1);
            for (int j = 0; j <= m; ++j) {
                auto t = e.rep->vals;
                t.insert(t.begin() + j, t[j]);
                int target = index[m + 1].at(t);
                e.degens[j] = target;
                C.cells[m + 1][target].degenerate = true;
            }
        }
    return C;
}

void validate(const FiniteCategory& cat) {
    int M = static_cast<int>(cat.src.size());
    if (cat.objects < 1) fail("category: at least one object required");
    if (static_cast<int>(cat.dst.size()) != M ||
        static_cast<int>(cat.compose.size()) != M)
        fail("category: morphism tables disagree");
    for (const auto& row : cat.compose)
        if (static_cast<int>(row.size()) != M)
            fail("category: composition table is not square");
    for (int f = 0; f < M; ++f)
        if (cat.src[f] < 0 || cat.src[f] >= cat.objects || cat.dst[f] < 0 ||
            cat.dst[f] >= cat.objects)
            fail("category: morphism endpoints out of range");
    if (static_cast<int>(cat.identity.size()) != cat.objects)
        fail("category: one identity per object required");
    for (int o = 0; o < cat.objects; ++o) {
        int e = cat.identity[o];
        if (e < 0 || e >= M || cat.src[e] != o || cat.dst[e] != o)
            fail("category: identity endpoints broken");
    }
    for (int g = 0; g < M; ++g)
        for (int f = 0; f < M; ++f) {
            int gf = cat.compose[g][f];
            if (cat.dst[f] != cat.src[g]) {
                if (gf != -1) fail("category: composite of non-composable pair");
                continue;
            }
            if (gf < 0 || gf >= M || cat.src[gf] != cat.src[f] ||
                cat.dst[gf] != cat.dst[g])
                fail("category: composite endpoints broken");
        }
    for (int f = 0; f < M; ++f) {
        if (cat.compose[cat.identity[cat.dst[f]]][f] != f ||
            cat.compose[f][cat.identity[cat.src[f]]] != f)
            fail("category: identity law broken");
    }
    for (int h = 0; h < M; ++h)
        for (int g = 0; g < M; ++g) {
            if (cat.dst[g] != cat.src[h]) continue;
            for (int f = 0; f < M; ++f) {
                if (cat.dst[f] != cat.src[g]) continue;
                if (cat.compose[h][cat.compose[g][f]] !=
                    cat.compose[cat.compose[h][g]][f])
                    fail("category: associativity broken");
            }
        }
}

TruncatedComplex nerve_complex(const FiniteCategory& cat, int top_dim) {
    validate(cat);
    if (top_dim < 0) fail("nerve_complex: negative top dimension");
    int M = static_cast<int>(cat.src.size());
    TruncatedComplex C;
    C.top_dim = top_dim;
    C.cells.resize(top_dim + 1);
    std::vector<std::vector<std::vector<int>>> chains(top_dim + 1);
    std::vector<std::map<std::vector<int>, int>> index(top_dim + 1);
    for (int o = 0; o < cat.objects; ++o) {
        index[0].emplace(std::vector<int>{o}, o);
        chains[0].push_back({o});
        C.cells[0].emplace_back();
    }
    for (int m = 1; m <= top_dim; ++m) {
        if (m == 1) {
            for (int f = 0; f < M; ++f) chains[1].push_back({f});
        } else {
            for (const auto& c : chains[m - 1])
                for (int f = 0; f < M; ++f)
                    if (cat.src[f] == cat.dst[c.back()]) {
                        auto d = c;
                        d.push_back(f);
                        chains[m].push_back(std::move(d));
                    }
        }
        for (std::size_t idx = 0; idx < chains[m].size(); ++idx) {
            index[m].emplace(chains[m][idx], static_cast<int>(idx));
            C.cells[m].emplace_back();
        }
    }
    for (int m = 1; m <= top_dim; ++m)
        for (std::size_t idx = 0; idx < chains[m].size(); ++idx) {
            const auto& c = chains[m][idx];
            auto& e = C.cells[m][idx];
            e.faces.resize(m + 1);
            for (int j = 0; j <= m; ++j) {
                if (m == 1) {
                    e.faces[j] = j == 0 ? cat.dst[c[0]] : cat.src[c[0]];
                    continue;
                }
                std::vector<int> d;
                if (j == 0)
                    d.assign(c.begin() + 1, c.end());
                else if (j == m)
                    d.assign(c.begin(), c.end() - 1);
                else {
                    d = c;
                    d[j - 1] = cat.compose[c[j]][c[j - 1]];
                    d.erase(d.begin() + j);
                }
                e.faces[j] = index[m - 1].at(d);
            }
        }
    for (int m = 0; m < top_dim; ++m)
        for (std::size_t idx = 0; idx < chains[m].size(); ++idx) {
            const auto& c = chains[m][idx];
            auto& e = C.cells[m][idx];
            e.degens.resize(m + 1);
            for (int j = 0; j <= m; ++j) {
                std::vector<int> d;
                if (m == 0) {
                    d = {cat.identity[c[0]]};
                } else {
                    d = c;
                    int v = j == 0 ? cat.src[c[0]] : cat.dst[c[j - 1]];
                    d.insert(d.begin() + j, cat.identity[v]);
                }
                int target = index[m + 1].at(d);
                e.degens[j] = target;
                C.cells[m + 1][target].degenerate = true;
            }
        }
    return C;
}

CheckRecord horn_check(const TruncatedComplex& C, int m, int slot) {
    if (m < 1 || m > C.top_dim) fail("horn_check: dimension out of range");
    if (slot < 0 || slot > m) fail("horn_check: slot out of range");
    CheckRecord rec{"horn", m, slot, "pass", 0, 0, {}};
    std::map<std::vector<int>, int> fillers;
    for (const auto& z : C.cells[m]) {
        auto key = z.faces;
        key[slot] = -1;
        ++fillers[key];
    }
    for_each_family(C, m, slot, [&](const std::vector<int>& fam) {
        ++rec.checked;
        auto it = fillers.find(fam);
        int count = it == fillers.end() ? 0 : it->second;
        if (count == 1) return;
        ++rec.failed;
        if (rec.witnesses.size() < witness_cap) {
            std::ostringstream oss;
            oss << "faces=(" << join_ints(fam, slot) << ") fillers=" << count;
            rec.witnesses.push_back(oss.str());
        }
    });
    if (rec.failed > 0) rec.status = "fail";
    return rec;
}

namespace {

/* Runs every task exactly once on up to jobs threads. Task order is
 * the slot order, so results land where the caller put them. */
void run_tasks(int jobs, std::vector<std::function<void()>>& tasks) {
    if (jobs <= 1 || tasks.size() <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errs(tasks.size());
    auto worker = [&] {
        for (;;) {
            std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            try {
                tasks[t]();
            } catch (...) {
                errs[t] = std::current_exception();
            }
        }
    };
    int width = static_cast<int>(
        std::min(static_cast<std::size_t>(jobs), tasks.size()));
    std::vector<std::thread> pool;
    for (int t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

CheckRecord det_record(const TruncatedComplex& C, const DetCondition& c) {
    CheckRecord rec{"det " + to_string(c), c.m, -1, "pass", 0, 0, {}};
    for (std::size_t idx = 0; idx < C.cells[c.m].size(); ++idx) {
        const auto& e = C.cells[c.m][idx];
        ++rec.checked;
        if (rows_pq_determinate(e.rows->rows, c.p, c.q)) continue;
        ++rec.failed;
        if (rec.witnesses.size() < witness_cap)
            rec.witnesses.push_back(describe_entry(e, idx));
    }
    if (rec.failed > 0) rec.status = "fail";
    return rec;
}

CheckRecord sur_record(const TruncatedComplex& C, const SurCondition& s) {
    CheckRecord rec{"sur " + to_string(s), s.m, s.j, "pass", 0, 0, {}};
    for (std::size_t idx = 0; idx < C.cells[s.m].size(); ++idx) {
        const auto& e = C.cells[s.m][idx];
        ++rec.checked;
        bool onto = true;
        for (const auto& fr : face(*e.rows, s.j).rows) {
            bool lifted = false;
            for (const auto& r : e.rows->rows) {
                VTuple t = r;
                t.erase(t.begin() + s.j);
                if (t == fr) {
                    lifted = true;
                    break;
                }
            }
            if (!lifted) {
                onto = false;
                break;
            }
        }
        if (onto) continue;
        ++rec.failed;
        if (rec.witnesses.size() < witness_cap)
            rec.witnesses.push_back(describe_entry(e, idx));
    }
    if (rec.failed > 0) rec.status = "fail";
    return rec;
}

}  // namespace

CheckReport check_truncated_composer(const TruncatedComplex& C, int n, int i,
                                     int depth, int jobs) {
    validate(C);
    if (n < 1) fail("check_truncated_composer: n must be at least 1");
    if (i < 0 || i > n + 1) fail("check_truncated_composer: slot out of range");
    if (depth < 1) fail("check_truncated_composer: depth must be positive");
    if (jobs < 1) fail("check_truncated_composer: jobs must be positive");
    if (C.top_dim < n + 1)
        fail("check_truncated_composer: the complex stops at dimension n");
    bool have_rows = n >= 2;
    for (int m = 0; m <= n && have_rows; ++m)
        for (const auto& e : C.cells[m])
            if (!e.rows) {
                have_rows = false;
                break;
            }
    ConditionSet conds;
    if (have_rows) conds = required_conditions(n, i);

    int horn_top = std::min(C.top_dim, n + depth);
    int horns = horn_top - n;
    CheckReport report;
    report.records.resize(horns + conds.determinacy.size() +
                          conds.surjectivity.size());
    std::vector<std::function<void()>> tasks;
    int at = 0;
    for (int m = n + 1; m <= horn_top; ++m, ++at)
        tasks.push_back(
            [&C, &report, m, i, at] { report.records[at] = horn_check(C, m, i); });
    for (const auto& c : conds.determinacy) {
        tasks.push_back(
            [&C, &report, c, at] { report.records[at] = det_record(C, c); });
        ++at;
    }
    for (const auto& s : conds.surjectivity) {
        tasks.push_back(
            [&C, &report, s, at] { report.records[at] = sur_record(C, s); });
        ++at;
    }
    run_tasks(jobs, tasks);

    bool horn_ok = true;
    for (int r = 0; r < horns; ++r)
        horn_ok = horn_ok && report.records[r].status == "pass";
    if (have_rows) {
        bool succinct_ok = true;
        for (std::size_t r = horns; r < report.records.size(); ++r)
            succinct_ok = succinct_ok && report.records[r].status == "pass";
        CheckRecord cross{"cross", n, i, "pass", 1, 0, {}};
        if (horn_ok != succinct_ok) {
            cross.status = "fail";
            cross.failed = 1;
        }
        std::ostringstream oss;
        oss << "horns=" << (horn_ok ? "pass" : "fail")
            << " conditions=" << (succinct_ok ? "pass" : "fail");
        cross.witnesses.push_back(oss.str());
        report.records.push_back(std::move(cross));
    }
    report.ok = true;
    for (const auto& r : report.records)
        report.ok = report.ok && r.status == "pass";
    return report;
}

CheckReport check_hypergroupoid(const TruncatedComplex& C, int n, int depth,
                                int jobs) {
    validate(C);
    if (n < 0) fail("check_hypergroupoid: negative level");
    if (depth < 1) fail("check_hypergroupoid: depth must be positive");
    if (jobs < 1) fail("check_hypergroupoid: jobs must be positive");
    if (C.top_dim < n + 1)
        fail("check_hypergroupoid: the complex stops at the level");
    CheckReport report;
    std::vector<std::function<void()>> tasks;
    int at = 0;
    for (int m = n + 1; m <= std::min(C.top_dim, n + depth); ++m)
        for (int slot = 0; slot <= m; ++slot) ++at;
    report.records.resize(at);
    at = 0;
    for (int m = n + 1; m <= std::min(C.top_dim, n + depth); ++m)
        for (int slot = 0; slot <= m; ++slot) {
            tasks.push_back([&C, &report, m, slot, at] {
                report.records[at] = horn_check(C, m, slot);
            });
            ++at;
        }
    run_tasks(jobs, tasks);
    report.ok = true;
    for (const auto& r : report.records)
        report.ok = report.ok && r.status == "pass";
    return report;
}

std::vector<int> matching_simplices(const TruncatedComplex& C, int m,
                                    const std::map<int, int>& faces) {
    if (m < 0 || m > C.top_dim) fail("matching_simplices: dimension out of range");
    for (auto [s, v] : faces) {
        if (m == 0 || s < 0 || s > m) fail("matching_simplices: slot out of range");
        if (v < 0 || v >= static_cast<int>(C.cells[m - 1].size()))
            fail("matching_simplices: face index out of range");
    }
    std::vector<int> out;
    for (int idx = 0; idx < static_cast<int>(C.cells[m].size()); ++idx) {
        const auto& e = C.cells[m][idx];
        bool match = true;
        for (auto [s, v] : faces)
            if (e.faces[s] != v) {
                match = false;
                break;
            }
        if (match) out.push_back(idx);
    }
    return out;
}

std::set<int> deletion_subset(const PartialSimplex& ps) {
    if (ps.m < 1) fail("partial simplex: dimension must be positive");
    for (auto [s, v] : ps.known)
        if (s < 0 || s > ps.m) fail("partial simplex: slot out of range");
    std::set<int> B;
    for (int s = 0; s <= ps.m; ++s)
        if (!ps.known.count(s)) B.insert(s);
    return B;
}

void validate(const TruncatedComplex& C, const PartialSimplex& ps) {
    deletion_subset(ps);
    if (ps.m - 1 > C.top_dim) fail("partial simplex: faces beyond the complex");
    for (auto [s, v] : ps.known)
        if (v < 0 || v >= static_cast<int>(C.cells[ps.m - 1].size()))
            fail("partial simplex: face index out of range");
    if (ps.m < 2) return;
    for (auto [q, zq] : ps.known)
        for (auto [p, zp] : ps.known) {
            if (p >= q) continue;
            if (C.cells[ps.m - 1][zq].faces[p] != C.cells[ps.m - 1][zp].faces[q - 1])
                fail("partial simplex: known faces do not match");
        }
}

std::set<int> delsub_of_face(const std::set<int>& B, int w) {
    if (!B.count(w)) fail("delsub_of_face: the slot is not deleted");
    if (*B.begin() < 0) fail("delsub_of_face: negative slot");
    std::set<int> out;
    for (int t : B) {
        if (t < w)
            out.insert(t);
        else if (t > w)
            out.insert(t - 1);
    }
    return out;
}

std::optional<int> deletion_type(const std::set<int>& B, int n, int i) {
    if (B.empty()) fail("deletion_type: empty subset");
    if (*B.begin() < 0) fail("deletion_type: negative slot");
    if (n < 1 || i < 0 || i > n + 1) fail("deletion_type: slot out of range");
    int k = static_cast<int>(B.size());
    if (*B.rbegin() > n + k) return std::nullopt;
    int p = 1;
    for (int t : B) {
        if (t == i + p - 1) return p;
        ++p;
    }
    return std::nullopt;
}

ExtendedFillResult extended_fill(const TruncatedComplex& C,
                                 const PartialSimplex& ps, int n, int i) {
    validate(C, ps);
    if (n < 1 || i < 0 || i > n + 1) fail("extended_fill: slot out of range");
    if (ps.m > C.top_dim) fail("extended_fill: dimension beyond the complex");
    auto B = deletion_subset(ps);
    int k = static_cast<int>(B.size());
    int m = ps.m;
    if (k == 0) fail("extended_fill: nothing to fill");
    ExtendedFillResult out;
    std::vector<int> path;
    if (k == 1) {
        int j = *B.begin();
        if (j >= i && j <= i + (m - n - 1)) {
            out.index = fill_one(C, m, j, ps.known);
            out.steps.push_back({path, m, j});
            return out;
        }
    } else if (deletion_type(B, n, i) && m >= n + k) {
        out.index = fill_typed(C, m, ps.known, B, n, i, path, out.steps);
        return out;
    }
    if (k <= m - (n + 2)) {
        out.index = fill_greedy(C, m, ps.known, B, path, out.steps);
        return out;
    }
    fail("extended_fill: the deletion subset has no type and exceeds the coskeletal bound");
}

ExtendedFillResult extended_fill(const TruncatedComplex& C,
                                 const PartialSimplex& ps, int n) {
    validate(C, ps);
    if (n < 1) fail("extended_fill: level out of range");
    if (ps.m > C.top_dim) fail("extended_fill: dimension beyond the complex");
    auto B = deletion_subset(ps);
    if (B.empty()) fail("extended_fill: nothing to fill");
    if (static_cast<int>(B.size()) > ps.m - n)
        fail("extended_fill: too many deleted slots for the dimension");
    ExtendedFillResult out;
    std::vector<int> path;
    out.index = fill_greedy(C, ps.m, ps.known, B, path, out.steps);
    return out;
}

bool is_A_cancelling(const TruncatedComplex& C, int n, int i, int w,
                     const std::set<int>& A) {
    if (n < 1 || n + 1 > C.top_dim) fail("is_A_cancelling: dimension out of range");
    if (i < 0 || i > n + 1) fail("is_A_cancelling: slot out of range");
    if (!A.count(i)) fail("is_A_cancelling: the slot must belong to A");
    for (int a : A)
        if (a < 0 || a > n + 1) fail("is_A_cancelling: A exceeds the slots");
    if (static_cast<int>(A.size()) >= n + 2)
        fail("is_A_cancelling: A must be a proper subset of the slots");
    if (w < 0 || w >= static_cast<int>(C.cells[n + 1].size()))
        fail("is_A_cancelling: no such simplex");
    std::vector<int> slots;
    for (int s = 0; s <= n + 1; ++s)
        if (!A.count(s) || s == i) slots.push_back(s);
    const auto& we = C.cells[n + 1][w];
    for (int o = 0; o < static_cast<int>(C.cells[n + 1].size()); ++o) {
        if (o == w) continue;
        const auto& oe = C.cells[n + 1][o];
        bool agree = true;
        for (int s : slots)
            if (oe.faces[s] != we.faces[s]) {
                agree = false;
                break;
            }
        if (agree) return false;
    }
    return true;
}

}  // namespace composer
