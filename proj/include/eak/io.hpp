#pragma once

#include "eak/lattice_sum.hpp"
#include "eak/local_data.hpp"
#include "eak/polytope.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace eak::io {

using nlohmann::json;

// Malformed input. what() reads "<source>:<line>: <field>: <message>".
class InputError : public std::runtime_error {
public:
    InputError(std::string source, int line, std::string field, std::string message);

    const std::string& source() const { return source_; }
    int line() const { return line_; }               // 0 when unknown
    const std::string& field() const { return field_; }  // JSON pointer, e.g. /vertices/2/0
    const std::string& message() const { return message_; }

private:
    std::string source_;
    int line_;
    std::string field_;
    std::string message_;
};

std::string read_file(const std::string& path);

// {"dim": d, "vertices": [[r, ...], ...]} or {"dim": d, "inequalities": [{"a": [ints], "b": r}, ...]}
// with r a string "p/q" or "p" (plain JSON integers are also accepted).
Polytope parse_polytope(const std::string& text, const std::string& source = "<input>");
Polytope load_polytope(const std::string& path);

// {"basis": [[r, ...], ...], "W": [[r, ...], ...], "e": [ints], "x": [r, ...]};
// basis and W are lists of column vectors.
LatticeSumProblem parse_lattice_problem(const std::string& text, const std::string& source = "<input>");
LatticeSumProblem load_lattice_problem(const std::string& path);

json to_json(const Rational& r);
json to_json(const RatVector& v);
json to_json(const IntVector& v);
json to_json(const ExactValue& v);
json polytope_summary(const Polytope& p);
json local_data_json(const LocalData& ld);

inline const std::string kSchemaVersion = "1";

// Canonical text of a report; parse_report(dump_report(r)) re-dumps byte-identically.
std::string dump_report(const json& report);
json parse_report(const std::string& text);

}  // namespace eak::io
