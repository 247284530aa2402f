#pragma once

/*
 * Combinatorics of the simplicial category: monotone maps between the
 * finite ordinals [m] = {0,...,m}, their standard factorizations, the
 * sharp/flat correspondence between monotone maps and strictly
 * increasing ones, complementary vertex functions, comb-trios, ordered
 * partitions, and unique horn fillers among the simplices of a standard
 * simplex.
 *
 * Conventions:
 *   - [m] has m+1 elements; a map [k] -> [m] is stored as its value
 *     sequence (length k+1) plus cod_size = m+1.
 *   - compose_maps(f, g) is diagrammatic: apply f first, then g.
 *   - Subsets of [m] are sorted duplicate-free int vectors; a nonempty
 *     subset and a StrictMap into [m] carry the same data.
 *
 * Preconditions are enforced with std::invalid_argument so callers can
 * surface malformed input distinctly from failed mathematical checks.
 */

#include <optional>
#include <vector>

namespace composer {

/* A non-decreasing function [dom_size-1] -> [cod_size-1]. */
struct MonotoneMap {
    std::vector<int> vals;
    int cod_size = 1;

    MonotoneMap() = default;
    MonotoneMap(std::vector<int> v, int cod) : vals(std::move(v)), cod_size(cod) {}

    int dom_size() const { return static_cast<int>(vals.size()); }
    int operator()(int t) const { return vals[t]; }
    bool operator==(const MonotoneMap&) const = default;
    auto operator<=>(const MonotoneMap&) const = default;
};

/* A strictly increasing function; image <-> subset of [cod_size-1]. */
struct StrictMap {
    std::vector<int> vals;
    int cod_size = 1;

    StrictMap() = default;
    StrictMap(std::vector<int> v, int cod) : vals(std::move(v)), cod_size(cod) {}

    int dom_size() const { return static_cast<int>(vals.size()); }
    int operator()(int t) const { return vals[t]; }
    const std::vector<int>& image() const { return vals; }
    bool operator==(const StrictMap&) const = default;
    auto operator<=>(const StrictMap&) const = default;
};

/* Three disjoint nonempty subsets X, A, A2 with union [m]. */
struct CombTrio {
    int m = 2;
    std::vector<int> X, A, A2;

    bool operator==(const CombTrio&) const = default;
    auto operator<=>(const CombTrio&) const = default;
};

/* A complementary vertex function pair (mu, lam): the sharp images of
 * mu: [k] -> [j+1] and lam: [j] -> [k+1] partition [j+k+1]. */
struct VertexPair {
    MonotoneMap mu, lam;
    bool operator==(const VertexPair&) const = default;
};

/* Ordered sequence of disjoint nonempty blocks covering [m]. */
struct OrderedPartition {
    int m = 0;
    std::vector<std::vector<int>> blocks;
    bool operator==(const OrderedPartition&) const = default;
};

struct StandardForm {
    std::vector<int> face_indices;   /* descending */
    std::vector<int> degen_indices;  /* ascending */
    bool operator==(const StandardForm&) const = default;
};

struct SumSplit {
    StrictMap f, f2, h;
    bool operator==(const SumSplit&) const = default;
};

/* Validation; throws std::invalid_argument when the invariant fails. */
void validate(const MonotoneMap& f);
void validate(const StrictMap& g);
void validate(const CombTrio& trio);
void validate(const OrderedPartition& p);
bool is_strict(const MonotoneMap& f);

/* Generators and conversions. */
MonotoneMap identity_map(int dom_size);
MonotoneMap face_map(int m, int i);        /* [m-1] -> [m], skips i   */
MonotoneMap degeneracy_map(int m, int j);  /* [m+1] -> [m], repeats j */
MonotoneMap as_monotone(const StrictMap& g);
StrictMap as_strict(const MonotoneMap& f);
StrictMap subset_map(const std::vector<int>& subset, int cod_size);

/* Composition, diagrammatic order: result(t) = g(f(t)). */
MonotoneMap compose_maps(const MonotoneMap& f, const MonotoneMap& g);
StrictMap compose_maps(const StrictMap& f, const StrictMap& g);

/* Unique factorization f = d_{i_1}..d_{i_q} s_{j_1}..s_{j_p} with
 * i_1 > ... > i_q and j_1 < ... < j_p. */
StandardForm standard_form(const MonotoneMap& f);
MonotoneMap recompose(const StandardForm& sf, int dom_size);

/* sharp(f)(t) = f(t)+t turns monotone into strictly increasing;
 * flat inverts it. */
StrictMap sharp(const MonotoneMap& f);
MonotoneMap flat(const StrictMap& g);

/* The complementary vertex function: sharp images of lam and of the
 * result partition [j+k+1]. Involution. */
MonotoneMap complement(const MonotoneMap& lam);
VertexPair make_pair_of(const MonotoneMap& mu);

/* Fiber counts over the codomain, and the inverse construction. */
std::vector<int> histogram(const MonotoneMap& f);
MonotoneMap reconstruct(const std::vector<int>& hg);

/* Given strict g, g2 whose images cover [m] and meet in j+1 points,
 * produce the unique f, f2 with g.f = g2.f2 = h, h = sorted meet. */
SumSplit sum_split(const StrictMap& g, const StrictMap& g2);

/* Canonical strict h: [n] -> [m] with h.f = g (Extension construction);
 * extend_all enumerates every solution in lexicographic order. */
StrictMap extend(const StrictMap& f, const StrictMap& g);
std::vector<StrictMap> extend_all(const StrictMap& f, const StrictMap& g);

/* Unique gamma with gamma.f = alpha, gamma.g = beta, for f, g whose
 * images partition the domain of gamma. */
StrictMap joint_extend(const StrictMap& f, const StrictMap& g,
                       const StrictMap& alpha, const StrictMap& beta);

/* The three pairs belonging to a trio, derived from (X,A), (X,A2),
 * (A,A2) by position within the sorted union. */
VertexPair trio_pair_xa(const CombTrio& trio);
VertexPair trio_pair_xa2(const CombTrio& trio);
VertexPair trio_pair_aa2(const CombTrio& trio);

/* All trios of dimension j+j2+k+2 containing both given pairs, indexed
 * by the strict extensions tau of mu_sharp along xi, lexicographic. */
std::vector<CombTrio> comb_trio_from_pairs(const VertexPair& p1, const VertexPair& p2);

/* Blocks selected by B, relabeled through the order collapse of their
 * union. */
OrderedPartition subpartition(const OrderedPartition& p, const std::vector<int>& B);

/* The pairwise position map of block i within blocks i and j. */
StrictMap partition_h(const OrderedPartition& p, int i, int j);

/* Builds an (m,n)-partition whose h_{0,i} maps equal the given ones,
 * k_sizes[t] = |A_t|-1. */
OrderedPartition partition_from_h(const std::vector<int>& k_sizes,
                                  const std::vector<StrictMap>& h0i);

/* Image of a subset avoiding {k, k+1} under the k-th degeneracy. */
std::vector<int> sigma_image(const std::vector<int>& A, int k);

/* Unique filler of an i-horn among simplices of a standard simplex:
 * lams[p], p != i, are the faces of the result. lams[i] is ignored. */
MonotoneMap delta_horn_fill(const std::vector<std::optional<MonotoneMap>>& lams, int i);

/* Enumeration helpers used by the exhaustive property sweeps. */
std::vector<std::vector<int>> combinations(int n, int k);
std::vector<MonotoneMap> all_monotone_maps(int dom_size, int cod_size);
std::vector<StrictMap> all_strict_maps(int dom_size, int cod_size);

}  // namespace composer
