#pragma once

#include "latinpat/latinon.hpp"

#include <json.hpp>

#include <string>

namespace latinpat {

// Latinon JSON: row_axis / col_axis objects with "breakpoints" (["p/q", ...])
// and "classes" (one {label: "p/q"} object per interval), "value_breakpoints",
// and "table" as {rowClass: {colClass: {part_index: "p/q"}}}.
nlohmann::json latinon_to_json(const StepLatinon& latinon);
// Throws Error(Parse) for malformed documents and Error(InvalidLatinon) for
// documents that parse but describe an ill-shaped Latinon.
StepLatinon latinon_from_json(const nlohmann::json& doc);

// Built-in name or path to a JSON file.
StepLatinon load_latinon(const std::string& name_or_path);

}  // namespace latinpat
