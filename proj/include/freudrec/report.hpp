#pragma once

// Output formatting. Every floating-point value is written with 17
// significant digits so it parses back to the same double.
//
// Two formats are produced:
//   csv    - comma-separated, one header row;
//   record - nested records in JSON syntax (non-finite numbers become null).

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace freudrec {

using Record = nlohmann::ordered_json;

std::string format_double(double value);

/// Serializes a record with 2-space indentation and 17-digit numbers.
void write_record(std::ostream& out, const Record& record);

/// Flattens a record to "key,value" lines with dotted keys.
void write_record_csv(std::ostream& out, const Record& record);

}  // namespace freudrec
