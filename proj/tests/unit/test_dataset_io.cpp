#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "slicedw/dataset_io.hpp"
#include "slicedw/error.hpp"
#include "support.hpp"

using namespace slicedw;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("slicedw_io_" + name);
}

ErrorCode read_error(const std::string& text, std::string* message = nullptr) {
  std::istringstream in(text);
  try {
    io::read_dataset(in, "data.csv");
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "parse succeeded";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(FormatDouble, RoundTrips) {
  for (double x : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 6.02214076e23, -4.9e-324, 123456789.125}) {
    EXPECT_EQ(std::strtod(io::format_double(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(io::format_double(0.5), "0.5");
  EXPECT_EQ(io::format_double(2.0), "2");
}

TEST(Dataset, RoundTripIsBitwise) {
  const auto mu = testsupport::std_gaussian_rows(37, 5, 3);
  for (bool header : {false, true}) {
    std::ostringstream out;
    io::write_dataset(out, mu, header);
    if (header) EXPECT_EQ(out.str().substr(0, 15), "x0,x1,x2,x3,x4\n");
    std::istringstream in(out.str());
    EXPECT_EQ(io::read_dataset(in, "mem", header), mu);
  }
}

TEST(Dataset, ToleratesBlankLinesAndCrlf) {
  std::istringstream in("1,2\r\n\n3,4\n\n");
  EXPECT_EQ(io::read_dataset(in, "mem"), testsupport::rows(2, 2, {1, 2, 3, 4}));
}

TEST(Dataset, ParseErrorsNameFileAndLine) {
  std::string msg;
  EXPECT_EQ(read_error("1,2\n3,x\n", &msg), ErrorCode::ParseError);
  EXPECT_NE(msg.find("data.csv:2"), std::string::npos) << msg;
  EXPECT_EQ(read_error("1,2\n3\n", &msg), ErrorCode::ParseError);
  EXPECT_NE(msg.find("data.csv:2"), std::string::npos) << msg;
  EXPECT_EQ(read_error("1,,2\n"), ErrorCode::ParseError);
  EXPECT_EQ(read_error("1,nan\n"), ErrorCode::ParseError);
  EXPECT_EQ(read_error(""), ErrorCode::EmptyInput);
}

TEST(Dataset, FileRoundTripAndAtomicWrite) {
  const auto path = temp_path("roundtrip.csv");
  const auto mu = testsupport::std_gaussian_rows(4, 3, 1);
  std::ostringstream out;
  io::write_dataset(out, mu);
  io::write_file_atomic(path, out.str());
  EXPECT_EQ(io::load_dataset(path), mu);
  io::write_file_atomic(path, "1,2\n");
  EXPECT_EQ(io::load_dataset(path), testsupport::rows(1, 2, {1, 2}));
  for (const auto& entry : std::filesystem::directory_iterator(path.parent_path())) {
    EXPECT_EQ(entry.path().filename().string().find("slicedw_io_roundtrip.csv."), std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST(Dataset, MissingFile) {
  try {
    io::load_dataset(temp_path("does_not_exist.csv"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
  EXPECT_THROW(io::write_file_atomic("/nonexistent_dir_xyz/out.csv", "x"), Error);
}
