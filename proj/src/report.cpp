#include "composer/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace composer {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

using ojson = nlohmann::ordered_json;

constexpr long long label_max = 0xffffffffLL;

long long int_field(const nlohmann::json& v, const char* where) {
    if (!v.is_number_integer())
        fail(std::string("relation file: ") + where + " must be an integer");
    return v.get<long long>();
}

Label label_field(const nlohmann::json& v, const char* where) {
    long long raw = int_field(v, where);
    if (raw < 0 || raw > label_max)
        fail(std::string("relation file: ") + where + " out of label range");
    return static_cast<Label>(raw);
}

ojson relation_value(const RelationFile& f) {
    ojson doc;
    doc["schema"] = "composer-kit/1";
    doc["kind"] = "relation";
    doc["arity"] = f.arity;
    if (!f.columns.empty()) {
        ojson cols = ojson::array();
        for (const ColumnSpec& c : f.columns) {
            ojson col;
            col["name"] = c.name;
            col["universe"] = c.universe;
            cols.push_back(std::move(col));
        }
        doc["columns"] = std::move(cols);
    }
    doc["rows"] = f.rows;
    return doc;
}

ojson report_value(const Report& r) {
    ojson doc;
    doc["schema"] = "composer-kit/1";
    doc["kind"] = "report";
    doc["command"] = r.command;
    doc["ok"] = r.ok;
    ojson timing;
    timing["records"] = r.records.size();
    timing["work"] = r.work;
    doc["timing"] = std::move(timing);
    ojson records = ojson::array();
    for (const CheckRecord& rec : r.records) {
        ojson row;
        row["check"] = rec.check;
        row["dimension"] = rec.dimension;
        row["slot"] = rec.slot;
        row["status"] = rec.status;
        row["checked"] = rec.checked;
        row["failed"] = rec.failed;
        row["witnesses"] = rec.witnesses;
        records.push_back(std::move(row));
    }
    doc["records"] = std::move(records);
    return doc;
}

std::string dump(const ojson& doc) { return doc.dump(2) + "\n"; }

}  // namespace

void validate(const RelationFile& f) {
    if (f.arity < 1) fail("relation file: arity must be positive");
    if (!f.columns.empty() &&
        static_cast<int>(f.columns.size()) != f.arity)
        fail("relation file: column count does not match the arity");
    std::set<VTuple> seen;
    for (const VTuple& t : f.rows) {
        if (static_cast<int>(t.size()) != f.arity)
            fail("relation file: row arity mismatch");
        if (!seen.insert(t).second) fail("relation file: duplicate row");
        for (int p = 0; p < f.arity; ++p)
            if (!f.columns.empty() && !f.columns[p].universe.count(t[p]))
                fail("relation file: row entry outside its column");
    }
}

Relation to_relation(const RelationFile& f) {
    validate(f);
    Relation r;
    r.columns.resize(f.arity);
    if (!f.columns.empty())
        for (int p = 0; p < f.arity; ++p) r.columns[p] = f.columns[p].universe;
    else
        for (const VTuple& t : f.rows)
            for (int p = 0; p < f.arity; ++p) r.columns[p].insert(t[p]);
    r.rows.insert(f.rows.begin(), f.rows.end());
    validate(r);
    return r;
}

RelationFile from_relation(const Relation& r) {
    validate(r);
    RelationFile f;
    f.arity = r.arity();
    for (const auto& col : r.columns) f.columns.push_back({"", col});
    f.rows.assign(r.rows.begin(), r.rows.end());
    return f;
}

Report make_report(std::string command, const CheckReport& result) {
    Report r;
    r.command = std::move(command);
    r.ok = result.ok;
    r.records = result.records;
    for (const CheckRecord& rec : r.records) r.work += rec.checked;
    return r;
}

std::string to_json(const RelationFile& f) {
    validate(f);
    return dump(relation_value(f));
}

std::string to_json(const Report& r) { return dump(report_value(r)); }

std::string to_json(const Report& r, const RelationFile& payload) {
    validate(payload);
    ojson doc = report_value(r);
    doc["relation"] = relation_value(payload);
    return dump(doc);
}

RelationFile relation_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("relation file: ") + e.what());
    }
    if (!doc.is_object()) fail("relation file: not a JSON object");
    if (!doc.contains("schema") || !doc["schema"].is_string() ||
        doc["schema"].get<std::string>() != "composer-kit/1")
        fail("relation file: missing or unsupported schema tag");
    if (!doc.contains("kind") || !doc["kind"].is_string() ||
        doc["kind"].get<std::string>() != "relation")
        fail("relation file: kind must be \"relation\"");
    if (!doc.contains("arity")) fail("relation file: missing arity");
    RelationFile f;
    long long arity = int_field(doc["arity"], "arity");
    if (arity < 1 || arity > 64) fail("relation file: arity out of range");
    f.arity = static_cast<int>(arity);
    if (doc.contains("columns")) {
        if (!doc["columns"].is_array())
            fail("relation file: columns must be an array");
        for (const auto& col : doc["columns"]) {
            if (!col.is_object() || !col.contains("universe") ||
                !col["universe"].is_array())
                fail("relation file: each column needs a universe array");
            ColumnSpec spec;
            if (col.contains("name")) {
                if (!col["name"].is_string())
                    fail("relation file: column name must be a string");
                spec.name = col["name"].get<std::string>();
            }
            for (const auto& v : col["universe"])
                spec.universe.insert(label_field(v, "universe entry"));
            f.columns.push_back(std::move(spec));
        }
    }
    if (!doc.contains("rows") || !doc["rows"].is_array())
        fail("relation file: missing rows array");
    for (const auto& row : doc["rows"]) {
        if (!row.is_array()) fail("relation file: each row must be an array");
        VTuple t;
        for (const auto& v : row) t.push_back(label_field(v, "row entry"));
        f.rows.push_back(std::move(t));
    }
    validate(f);
    return f;
}

std::string to_text(const RelationFile& f) {
    validate(f);
    std::size_t width = 1;
    for (const VTuple& t : f.rows)
        for (Label v : t) width = std::max(width, std::to_string(v).size());
    std::ostringstream oss;
    oss << "relation arity=" << f.arity << " rows=" << f.rows.size() << "\n";
    for (const VTuple& t : f.rows) {
        for (std::size_t p = 0; p < t.size(); ++p) {
            std::string cell = std::to_string(t[p]);
            oss << (p == 0 ? "  " : " ")
                << std::string(width - cell.size(), ' ') << cell;
        }
        oss << "\n";
    }
    return oss.str();
}

std::string to_text(const Report& r) {
    std::ostringstream oss;
    oss << "command: " << r.command << "\n";
    oss << "status: " << (r.ok ? "pass" : "fail") << "\n";
    oss << "records: " << r.records.size() << " work: " << r.work << "\n";
    std::size_t width = 1;
    for (const CheckRecord& rec : r.records)
        width = std::max(width, rec.check.size());
    for (const CheckRecord& rec : r.records) {
        oss << "  " << rec.check << std::string(width - rec.check.size(), ' ')
            << "  m=" << rec.dimension;
        if (rec.slot >= 0) oss << " slot=" << rec.slot;
        oss << "  " << rec.status << "  checked=" << rec.checked
            << " failed=" << rec.failed << "\n";
        for (const std::string& w : rec.witnesses) oss << "    " << w << "\n";
    }
    return oss.str();
}

std::string to_text(const Report& r, const RelationFile& payload) {
    return to_text(r) + "\n" + to_text(payload);
}

}  // namespace composer
