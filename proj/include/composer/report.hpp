#pragma once

/*
 * File formats and run reports for the command-line tools. Relation
 * files travel as UTF-8 JSON tagged "schema": "composer-kit/1";
 * reports collect check records. Both renderers are deterministic:
 * identical inputs give identical bytes, so effort is reported as
 * work counts rather than wall time.
 */

#include <string>
#include <vector>

#include "composer/scomplex.hpp"
#include "composer/verify.hpp"

namespace composer {

/* Optional per-coordinate metadata: a display name and the label
 * universe. Carried through unchanged. */
struct ColumnSpec {
    std::string name;
    std::set<Label> universe;
    bool operator==(const ColumnSpec&) const = default;
};

/* rows in file order, distinct, each of the stated arity; columns
 * either empty or one per coordinate, covering the rows. */
struct RelationFile {
    int arity = 0;
    std::vector<ColumnSpec> columns;
    std::vector<VTuple> rows;
    bool operator==(const RelationFile&) const = default;
};

void validate(const RelationFile& f);

/* Column universes default to the labels present per coordinate. */
Relation to_relation(const RelationFile& f);
RelationFile from_relation(const Relation& r);

struct Report {
    std::string command; /* echo of the invocation */
    bool ok = true;
    std::vector<CheckRecord> records;
    long long work = 0; /* sum of checked counts */
};

Report make_report(std::string command, const CheckReport& result);

/* Canonical JSON: fixed key order, two-space indent, one trailing
 * newline. The combined form nests the relation under "relation". */
std::string to_json(const RelationFile& f);
std::string to_json(const Report& r);
std::string to_json(const Report& r, const RelationFile& payload);

/* Rejects anything that does not parse back into a valid file with
 * the expected schema tag. */
RelationFile relation_from_json(const std::string& text);

/* Fixed-width row tables and aligned record lines for human diffing. */
std::string to_text(const RelationFile& f);
std::string to_text(const Report& r);
std::string to_text(const Report& r, const RelationFile& payload);

}  // namespace composer
