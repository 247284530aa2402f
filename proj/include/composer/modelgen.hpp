#pragma once

/*
 * Finite models by enlargement. A single relation generates a
 * truncated complex; for a chosen composition slot the complex must
 * satisfy determinacy conditions that propagate to lower dimensions
 * by three rewrite rules. A relation failing them is repaired by
 * adjoining, for each missing filler of a partial element of a
 * subface, the row that agrees with a fixed anchor row on the deleted
 * coordinates. Slot 0 and the top slot are characterized outright by
 * how row pairs overlap, and block relations built from fresh labels
 * satisfy every slot at once.
 */

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "composer/compose.hpp"
#include "composer/delta.hpp"

namespace composer {

/* Rule 1: (p,q).m requires (p-1,q-1).(m-1) when p >= 2.
 * Rule 2: (p,q).m requires (p,q-1).(m-1)   when q-p >= 3.
 * Rule 3: (p,q).m requires (p,q).(m-1)     when q <= m-2.
 * Least superset closed under all three. */
std::set<DetCondition> rules_closure(const std::set<DetCondition>& conds);

/* The conditions on n-simplices under which a complex of them admits
 * compositions at slot i, with the determinacy part rules-closed.
 * Surjectivity applies at dimension n only. */
ConditionSet required_conditions(int n, int i);

/* The tuple agreeing with the anchor on the deleted positions and
 * with b, in order, elsewhere. */
VTuple anchored_cover(const VTuple& b, const std::set<int>& deleted,
                      const VTuple& anchor);

/* Rows reindexed along a monotone map of coordinate positions. */
std::set<VTuple> image_rows(const std::set<VTuple>& rows, const MonotoneMap& alpha);

/* Every tuple whose p-drop and q-drop land in the corresponding
 * projections of the rows: the splices a[p -> b_p] over row pairs
 * agreeing off {p,q}. The rows are (p,q)-determinate when this adds
 * nothing. */
std::set<VTuple> pq_fill(const std::set<VTuple>& rows, int p, int q);
bool rows_pq_determinate(const std::set<VTuple>& rows, int p, int q);

/* First determinacy condition in conds that fails on some monotone
 * image of the rows, with the offending reindexing. Surjectivity
 * entries are not consulted. */
struct DetFailure {
    DetCondition condition;
    MonotoneMap alpha;
};

std::optional<DetFailure> find_det_failure(const std::set<VTuple>& rows,
                                           const ConditionSet& conds);

/* Least superset of r in which, for every strictly monotone
 * coordinate deletion demanded by a determinacy condition in conds,
 * every partial element of the deleted image has the anchored cover
 * of its filler present. The anchor must be a row of r and the
 * determinacy part of conds must be rules-closed. The scan order is
 * fixed but the fixpoint does not depend on it. */
Relation enlarge(const Relation& r, const VTuple& anchor, const ConditionSet& conds);

/* Where two equal-arity tuples agree: nowhere, on one contiguous
 * interval of positions, or on a scattered set. lo/hi are the first
 * and last agreeing positions when any exist. */
enum class OverlapKind { disjoint, single, multiple };

struct Overlap {
    OverlapKind kind = OverlapKind::disjoint;
    int lo = 0;
    int hi = 0;
    std::vector<int> agreement;

    bool operator==(const Overlap&) const = default;
};

Overlap overlap_classify(const VTuple& t, const VTuple& u);

/* Slot-0 models need every distinct pair of rows disjoint or agreeing
 * on a single interval; top-slot models additionally need that
 * interval to reach the last coordinate. */
enum class OverlapMode { slot_zero, slot_top };

struct OverlapReport {
    bool ok = true;
    std::optional<std::pair<VTuple, VTuple>> witness;
    Overlap detail;
};

OverlapReport model_check_overlap(const Relation& r, OverlapMode mode);

/* nblocks blocks of n+1 rows: row r of a block replaces the first r
 * coordinates of the block's base row with fresh labels, so distinct
 * rows overlap exactly on a tail. Block k is block 0 shifted by
 * k(n+1)(n+2)/2. The result is re-verified against both overlap modes
 * and the determinacy conditions of every slot before returning. */
Relation hypergroupoid_blocks(int n, int nblocks);

}  // namespace composer
