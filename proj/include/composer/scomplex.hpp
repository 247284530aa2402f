#pragma once

/*
 * The simplicial set of multiplace relations. An n-simplex is an
 * (n+1)-ary relation on its own faces; iterating, its entries flatten
 * to a tuple of (n+1)! labels, the fundamental entries. Simplices are
 * stored as node tables: for each nonempty subset W of [n] (the
 * surviving vertices) the element set of the corresponding subface.
 *
 * Face coherence: projecting any node tuple lands in the node one
 * vertex down. Faces need not lift.
 *
 * Subface-simplicial simplices additionally carry a compact form,
 * per-node sets of vertex tuples; the two are related entrywise by the
 * h bijection and the heavy predicates prefer the compact form.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace composer {

using Label = std::uint32_t;
using VTuple = std::vector<Label>;  /* vertex tuple (t_0, ..., t_n) */
using Mask = unsigned;              /* bit v set = vertex v survives */

/* FundamentalTuple size is (dim+1)!, so general simplices are capped. */
inline constexpr int max_general_dim = 8;

int fsig_size(int n);  /* (n+1)! */

/* For each of the (n+1)! entry slots, the vertex whose column supports
 * it: the inductive concatenation 0; 1,0; 2,1,2,0,1,0; ... */
std::vector<int> entry_columns(int n);

/* The fundamental entries of a simplex element: (dim+1) blocks, each a
 * tuple of dimension dim-1. */
struct FundamentalTuple {
    int dim = 0;
    std::vector<Label> entries;

    bool operator==(const FundamentalTuple&) const = default;
    auto operator<=>(const FundamentalTuple&) const = default;
};

void validate(const FundamentalTuple& a);

/* h_map is the bijection from vertex tuples onto the subcomponent-
 * simplicial tuples; h_inv reverses it and rejects anything else. */
FundamentalTuple h_map(const VTuple& t);
VTuple h_inv(const FundamentalTuple& a);

FundamentalTuple proj_e(const FundamentalTuple& a, int j);
FundamentalTuple degen_c(const FundamentalTuple& a, int j);

/* e_j e_k = e_{k-1} e_j for j<k, at the top level / at every level. */
bool is_component_simplicial(const FundamentalTuple& a);
bool is_subcomponent_simplicial(const FundamentalTuple& a);

/* An (n+1)-ary relation of sets: rows over the support columns. */
struct Relation {
    std::vector<std::set<Label>> columns;
    std::set<VTuple> rows;

    int arity() const { return static_cast<int>(columns.size()); }
    bool operator==(const Relation&) const = default;
};

void validate(const Relation& r);
Relation face(const Relation& r, int p);        /* drop coordinate p */
Relation degeneracy(const Relation& r, int p);  /* repeat coordinate p */

using NodeTable = std::map<Mask, std::set<FundamentalTuple>>;
using CompactTable = std::map<Mask, std::set<VTuple>>;

struct SSimplex {
    int dim = 0;
    std::vector<std::set<Label>> fsig;  /* ambient columns V_0..V_n */
    NodeTable nodes;                    /* one entry per nonempty W */
    std::optional<CompactTable> compact;

    const std::set<FundamentalTuple>& elem() const;

    /* equality is structural; the compact form is derived data */
    bool operator==(const SSimplex& o) const {
        return dim == o.dim && fsig == o.fsig && nodes == o.nodes;
    }
};

void validate(const SSimplex& y);

SSimplex face(const SSimplex& y, int j);
SSimplex degeneracy(const SSimplex& y, int j);

bool is_e_simplicial(const SSimplex& y);
bool is_subface_simplicial(const SSimplex& y);

/* Same signature and subfaces; the element set becomes every
 * signature tuple that projects into the faces component-simplicially. */
SSimplex e_hull(const SSimplex& y);

/* Least and greatest simplices with the given top element set: nodes
 * are all iterated projection images of T, respectively the full
 * products of the surviving columns. */
SSimplex t_min(const std::set<FundamentalTuple>& T, const std::vector<std::set<Label>>& fsig);
SSimplex t_max(const std::set<FundamentalTuple>& T, const std::vector<std::set<Label>>& fsig);

/* Rows whose h images lie in the element set; defined on
 * subface-simplicial simplices only. */
Relation vertex_relation(const SSimplex& y);

/* Node sets are the projection images of the h images of the rows;
 * least subface-simplicial simplex with the given vertex relation. */
SSimplex minimal_simplex(const Relation& R);

/* Every node is all of FE of its columns: the maximal
 * subface-simplicial simplex on the signature. */
SSimplex max_simplex(const std::vector<std::set<Label>>& fsig);

}  // namespace composer
