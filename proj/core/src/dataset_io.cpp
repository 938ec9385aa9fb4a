#include "slicedw/dataset_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unistd.h>

#include "slicedw/error.hpp"

namespace slicedw::io {

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

void write_dataset(std::ostream& out, const EmpiricalDistribution& mu, bool header) {
  const std::size_t d = mu.dim();
  if (header) {
    for (std::size_t j = 0; j < d; ++j) out << (j ? ",x" : "x") << j;
    out << '\n';
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto row = mu.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      if (j) out << ',';
      out << format_double(row[j]);
    }
    out << '\n';
  }
}

namespace {
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}
}  // namespace

EmpiricalDistribution read_dataset(std::istream& in, const std::string& source_name, bool header) {
  std::vector<double> data;
  std::size_t dim = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::string line;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::ParseError, source_name + ":" + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (header && line_no == 1) continue;
    const std::string_view content = trim(line);
    if (content.empty()) continue;

    std::size_t columns = 0;
    std::string_view rest = content;
    for (;;) {
      const std::size_t comma = rest.find(',');
      const std::string_view field = trim(rest.substr(0, comma));
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        fail("column " + std::to_string(columns + 1) + ": not a number: '" + std::string(field) + "'");
      }
      if (!std::isfinite(value)) fail("column " + std::to_string(columns + 1) + ": non-finite value");
      data.push_back(value);
      ++columns;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      dim = columns;
    } else if (columns != dim) {
      fail("expected " + std::to_string(dim) + " columns, found " + std::to_string(columns));
    }
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::EmptyInput, source_name + ": no samples");
  return EmpiricalDistribution(rows, dim, std::move(data));
}

EmpiricalDistribution load_dataset(const std::filesystem::path& path, bool header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_dataset(in, path.string(), header);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::IoError, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace slicedw::io
