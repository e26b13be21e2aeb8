#include <filesystem>

#include "doctest.h"
#include "eoa/qio.hpp"
#include "support.hpp"

using namespace eoa;
namespace t = eoa::testing;

namespace {

std::filesystem::path data(const char* name) { return std::filesystem::path(EOA_DATA_DIR) / name; }

template <typename E>
std::string error_text(std::string_view text) {
  try {
    parse_qdm(text);
  } catch (const E& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a minimal qdm") {
  const DensityMatrix rho = parse_qdm(
      "qdm 1\n"
      "dims 1 2   # a trailing comment\n"
      "0.5 0  0 0.1\n"
      "0 -0.1  0.5 0\n");
  CHECK(rho.dims() == BipartiteDims{1, 2});
  CHECK(rho.mat()(0, 1) == Complex(0.0, 0.1));
  CHECK(rho.mat()(1, 0) == Complex(0.0, -0.1));
}

TEST_CASE("qdm round trip is exact") {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = t::random_density({2, 1 + static_cast<std::size_t>(k % 3)}, rng);
    const DensityMatrix back = parse_qdm(write_qdm(rho));
    CHECK(back.dims() == rho.dims());
    CHECK(back.mat() == rho.mat());
  }
}

TEST_CASE("qens round trip") {
  std::mt19937_64 rng(52);
  const DensityMatrix rho = t::random_density({2, 2}, rng, 3);
  const Ensemble e = eigen_ensemble(rho);
  const Ensemble back = parse_qens(write_qens(e));
  REQUIRE(back.size() == e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    CHECK(back.members()[k].p == e.members()[k].p);
    CHECK(std::equal(back.members()[k].state.vec().begin(), back.members()[k].state.vec().end(),
                     e.members()[k].state.vec().begin()));
  }
}

TEST_CASE("qdm errors") {
  CHECK(error_text<ParseError>("qdm 2\ndims 1 1\n1 0\n").size() > 0);
  CHECK(error_text<ParseError>("dims 1 1\n1 0\n").size() > 0);
  CHECK(error_text<DimensionMismatchError>("qdm 1\ndims 1 2\n1 0 0 0 0 0\n").size() > 0);
  CHECK(error_text<DimensionMismatchError>("qdm 1\ndims 1 1\n1 0 0 0\n").size() > 0);
  CHECK(error_text<ValidationError>("qdm 1\ndims 1 1\n0.9 0\n").find("trace") != std::string::npos);
  try {
    parse_qdm("qdm 1\ndims 1 1\n1 x\n");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("shipped corrupt fixtures") {
  CHECK_THROWS_AS(parse_qdm(read_text_file(data("bad_trace.qdm"))), ValidationError);
  CHECK_THROWS_AS(parse_qdm(read_text_file(data("not_hermitian.qdm"))), ValidationError);
  CHECK_THROWS_AS(parse_qdm(read_text_file(data("bad_dims.qdm"))), DimensionMismatchError);
  CHECK_THROWS_AS(parse_qdm(read_text_file(data("bad_syntax.qdm"))), ParseError);
  CHECK_THROWS_AS(read_text_file(data("missing.qdm")), IoError);
}

TEST_CASE("shipped valid fixtures parse") {
  for (const char* name : {"diag_third.qdm", "bell.qdm", "diag_alpha_03.qdm", "product_pure_mixed.qdm",
                           "qutrit_pair.qdm", "diag_third_two_copies.qdm"}) {
    CAPTURE(name);
    CHECK_NOTHROW(parse_qdm(read_text_file(data(name))));
  }
}
