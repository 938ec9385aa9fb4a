#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "slicedw/types.hpp"

namespace slicedw::io {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

// One sample per line, comma separated, '.' decimal separator. With
// `header`, a first line "x0,x1,..." is written / skipped.
void write_dataset(std::ostream& out, const EmpiricalDistribution& mu, bool header = false);
EmpiricalDistribution read_dataset(std::istream& in, const std::string& source_name,
                                   bool header = false);

EmpiricalDistribution load_dataset(const std::filesystem::path& path, bool header = false);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace slicedw::io
