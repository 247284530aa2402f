#pragma once

/*
 * Complementary-subface machinery over a host complex. A fixed
 * simplex x sits inside a higher simplex z at recorded vertex
 * positions; the simplices having x as a subface form a complex of
 * their own whose face and degeneracy operators touch only complement
 * vertices. From it derive the head- and tail-interval subcomplexes,
 * the last-vertex subcomplex, and the pairing with a map into the
 * host.
 *
 * A witness names the host simplex together with the vertex functions
 * of x and of its complement. Distinct position sets of x in the same
 * host are distinct witnesses; identifying them breaks the simplicial
 * identities as soon as x is degenerate.
 */

#include <utility>
#include <vector>

#include "composer/delta.hpp"
#include "composer/verify.hpp"

namespace composer {

/* The positions a subface occupies in its host, as a strict map into
 * [host dim]. */
using VertexList = StrictMap;

/* z lies in host dimension j+k+1; mu: [k] -> [j+1] is the vertex
 * function of the fixed subface, lam: [j] -> [k+1] that of the
 * complement. sharp(mu) and sharp(lam) partition [j+k+1]. */
struct CplWitness {
    int z = -1;
    MonotoneMap mu, lam;
    bool operator==(const CplWitness&) const = default;
};

/* Dimensions of the fixed subface, the complement, and the host. */
int witness_k(const CplWitness& w);
int witness_j(const CplWitness& w);
int witness_dim(const CplWitness& w);

/* Map shapes, complementarity, and host index range. */
void validate(const TruncatedComplex& C, const CplWitness& w);

/* The subface spanned by the listed positions of z, deleting the rest
 * from the top down; the full position set returns z itself. */
int subface(const TruncatedComplex& C, int m, int z, const std::vector<int>& positions);

/* Vertex t of z. */
int vertex(const TruncatedComplex& C, int m, int z, int t);

/* The witness placing the fixed subface at the given positions. */
CplWitness witness_at(const TruncatedComplex& C, int m, int z, const std::vector<int>& positions);

int fixed_subface(const TruncatedComplex& C, const CplWitness& w);
int complement_subface(const TruncatedComplex& C, const CplWitness& w);

/* The fixed subface and the complement trade places. */
CplWitness swapped(const CplWitness& w);

/* Face p of the complement deletes host vertex lam(p)+p and keeps x:
 * the pair becomes (sigma_p mu, lam after the p-th coface). The
 * degeneracy duplicates that vertex and the pair becomes
 * (coface_{p+1} mu, lam after the p-th codegeneracy). */
CplWitness cx_face(const TruncatedComplex& C, const CplWitness& w, int p);
CplWitness cx_degen(const TruncatedComplex& C, const CplWitness& w, int p);

/* Vertex p of the complement, reached by deleting the other
 * complement vertices one face at a time. */
CplWitness cx_vertex(const TruncatedComplex& C, const CplWitness& w, int p);

/* Head interval: [0,t] inside the positions of x, equivalently
 * lam(0) > t. Tail interval: the last t+1 host positions inside x,
 * equivalently lam(j) < k+1-t. Last vertex: the host ends where x
 * ends, equivalently mu(k) = j+1. */
bool membership_L(const CplWitness& w, int t);
bool membership_R(const CplWitness& w, int t);
bool membership_plus(const CplWitness& w);

/* The complex fixing x. Dimension j holds one entry per witness with
 * host dimension j+k+1; entry rep caches the complement's vertex
 * function. */
struct CxComplex {
    TruncatedComplex complex;
    std::vector<std::vector<CplWitness>> witnesses;
};

/* All witnesses up to dimension bound; needs bound+k+1 host levels.
 * The result passes the full index audit. */
CxComplex build_cx(const TruncatedComplex& C, int k, int x, int bound);

/* The subcomplexes cut out by membership_plus, membership_L and
 * membership_R; closed under all operators. */
CxComplex build_cx_plus(const TruncatedComplex& C, int k, int x, int bound);
CxComplex build_lx(const TruncatedComplex& C, int k, int x, int t, int bound);
CxComplex build_rx(const TruncatedComplex& C, int k, int x, int t, int bound);

/* Dimensionwise index map commuting with faces and degeneracies. */
struct SimplicialMap {
    std::vector<std::vector<int>> levels;
};

/* F maps C into D level by level. */
void validate_map(const TruncatedComplex& C, const TruncatedComplex& D, const SimplicialMap& F);

/* The image witness keeps both vertex functions over the mapped host. */
CplWitness push_witness(const SimplicialMap& F, const CplWitness& w);

/* Pairs (witness over C, simplex of D) whose complement subface equals
 * the image of the D side; operators act coordinatewise. Every stored
 * pair satisfies the equation, checked at construction. */
struct CxfComplex {
    TruncatedComplex complex;
    std::vector<std::vector<std::pair<CplWitness, int>>> pairs;
};

CxfComplex build_cxf(const TruncatedComplex& C, int k, int x,
                     const TruncatedComplex& D, const SimplicialMap& F, int bound);

/* Horn profile of the complex fixing x, built depth levels above n. */
CheckReport check_cx_composer(const TruncatedComplex& C, int k, int x, int n, int i,
                              int depth = 2);

}  // namespace composer
