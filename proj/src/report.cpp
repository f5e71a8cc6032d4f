#include "freudrec/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace freudrec {

namespace {

void write_value(std::ostream& out, const Record& value, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (value.type()) {
    case Record::value_t::object: {
      if (value.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) {
          out << ",\n";
        }
        first = false;
        out << pad << Record(key).dump() << ": ";
        write_value(out, item, depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case Record::value_t::array: {
      if (value.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) {
          out << ",\n";
        }
        out << pad;
        write_value(out, value[i], depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case Record::value_t::number_float: {
      const double v = value.get<double>();
      out << (std::isfinite(v) ? format_double(v) : std::string("null"));
      return;
    }
    default:
      out << value.dump();
  }
}

void flatten(std::ostream& out, const Record& value, const std::string& prefix) {
  if (value.is_object()) {
    for (const auto& [key, item] : value.items()) {
      flatten(out, item, prefix.empty() ? key : prefix + "." + key);
    }
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      flatten(out, value[i], prefix + "." + std::to_string(i));
    }
  } else if (value.is_number_float()) {
    const double v = value.get<double>();
    out << prefix << "," << (std::isfinite(v) ? format_double(v) : std::string()) << "\n";
  } else if (value.is_string()) {
    out << prefix << "," << value.get<std::string>() << "\n";
  } else if (value.is_null()) {
    out << prefix << ",\n";
  } else {
    out << prefix << "," << value.dump() << "\n";
  }
}

}  // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

void write_record(std::ostream& out, const Record& record) {
  write_value(out, record, 0);
  out << "\n";
}

void write_record_csv(std::ostream& out, const Record& record) {
  out << "key,value\n";
  flatten(out, record, "");
}

}  // namespace freudrec
