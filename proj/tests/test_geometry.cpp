#include "test_support.hpp"

#include <doctest.h>

#include <fstream>

using namespace famedkit;
using namespace famedkit::testing;
using std::numbers::pi;

namespace {

std::map<std::string, double> census_volumes() {
  std::map<std::string, double> out;
  for (const auto& row : census_rows()) {
    std::ifstream in(data_path(std::string("census/") + row.name + ".json"));
    const auto j = nlohmann::json::parse(in);
    if (j.contains("census_volume")) out[row.name] = j["census_volume"].get<double>();
  }
  return out;
}

} // namespace

TEST_SUITE("geometry") {

TEST_CASE("Bloch-Wigner agrees with the Lobachevsky series") {
  const Complex regular = std::polar(1.0, pi / 3);
  CHECK(bloch_wigner(regular) == doctest::Approx(3 * lobachevsky(pi / 3)).epsilon(1e-10));
  CHECK(bloch_wigner(Complex(0, 1)) == doctest::Approx(0.915965594177219).epsilon(1e-12));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-3, 4), im(0.05, 3);
  for (int i = 0; i < 25; ++i) {
    const Complex z(re(rng), im(rng));
    CAPTURE(z);
    CHECK(bloch_wigner(z) == doctest::Approx(ideal_tetrahedron_volume(z)).epsilon(1e-9));
  }
}

TEST_CASE("dilogarithm special values") {
  CHECK(std::abs(dilog(1.0) - pi * pi / 6) < 1e-14);
  CHECK(std::abs(dilog(-1.0) + pi * pi / 12) < 1e-13);
  CHECK(std::abs(dilog(0.5) - (pi * pi / 12 - 0.5 * std::log(2.0) * std::log(2.0))) < 1e-14);
  // Five-term relation on a few points.
  for (const Complex x : {Complex(0.3, 0.2), Complex(-0.7, 1.1), Complex(2.0, 0.5)}) {
    const Complex y(0.4, -0.3);
    const double lhs = bloch_wigner(x) + bloch_wigner(y) + bloch_wigner((1.0 - x) / (1.0 - x * y)) +
                       bloch_wigner(1.0 - x * y) + bloch_wigner((1.0 - y) / (1.0 - x * y));
    CHECK(std::abs(lhs) < 1e-12);
  }
}

TEST_CASE("Jacobian agrees with finite differences") {
  const auto tri = load_census("K6a2");
  const auto sys = completeness_system(tri);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> re(0.1, 0.9), im(0.2, 1.2);
  ShapeVector s;
  for (std::size_t t = 0; t < tri.size(); ++t) s.z.emplace_back(re(rng), im(rng));
  const ComplexMatrix j = jacobian(sys, s);
  const double h = 1e-6;
  for (std::size_t t = 0; t < tri.size(); ++t) {
    ShapeVector plus = s, minus = s;
    plus.z[t] += h;
    minus.z[t] -= h;
    const ComplexVector fd = (residual(sys, plus) - residual(sys, minus)) / (2 * h);
    for (Eigen::Index r = 0; r < fd.size(); ++r) CHECK(std::abs(fd(r) - j(r, static_cast<Eigen::Index>(t))) < 1e-6);
  }
}

TEST_CASE("figure-eight complete structure is certified") {
  const auto tri = load_fixture("fig8.json");
  const auto report = check_geometry(tri);
  CHECK(report.status == GeometryStatus::certified_geometric);
  REQUIRE(report.shapes.has_value());
  for (const auto& z : report.shapes->z) CHECK(std::abs(z - std::polar(1.0, pi / 3)) < 1e-9);
  CHECK(std::abs(*report.volume - 6 * lobachevsky(pi / 3)) < 1e-9);
  REQUIRE(report.box.has_value());
  for (std::size_t t = 0; t < 2; ++t) {
    const ComplexBox& b = report.box->boxes[t];
    CHECK(b.re_lo <= 0.5);
    CHECK(b.re_hi >= 0.5);
    CHECK(b.im_lo <= std::sqrt(3.0) / 2);
    CHECK(b.im_hi >= std::sqrt(3.0) / 2);
    CHECK(b.im_lo > 0);
  }
}

TEST_CASE("hyperbolic census knots certify with the census volume") {
  const auto volumes = census_volumes();
  for (const auto& row : census_rows()) {
    if (!row.hyperbolic) continue;
    CAPTURE(row.name);
    const auto report = check_geometry(load_census(row.name));
    CHECK(report.status == GeometryStatus::certified_geometric);
    if (volumes.count(row.name)) CHECK(std::abs(*report.volume - volumes.at(row.name)) < 1e-8);
  }
}

TEST_CASE("torus knots have no positive solution") {
  for (const char* name : {"K3a1", "K5a2", "K7a7"}) {
    CAPTURE(name);
    const auto report = check_geometry(load_census(name), true);
    CHECK_FALSE(report.geometric());
  }
}

TEST_CASE("a real shape certifies without positivity") {
  const auto tri = load_census("K3a1");
  const auto sys = completeness_system(tri);
  const ShapeVector s = solve_complete_structure(sys);
  for (const auto& z : s.z) CHECK(std::abs(z.imag()) < 1e-8);
  try {
    const auto box = certify_solution(sys, s);
    CHECK(box.certified);
    CHECK_FALSE(box.positivity);
    CHECK_FALSE(box.geometric());
  } catch (const CertificationFailed&) {
    CHECK(true);
  }
}

TEST_CASE("volume rejects non-positive shapes") {
  ShapeVector s;
  s.z = {Complex(0.5, -0.1)};
  CHECK_THROWS_AS(volume(s), NonPositiveShape);
}

TEST_CASE("volume is invariant under relabeling") {
  std::mt19937_64 rng(13);
  const auto tri = load_census("K7a4");
  const double v = *check_geometry(tri).volume;
  for (int i = 0; i < 3; ++i) CHECK(std::abs(*check_geometry(random_relabel(tri, rng)).volume - v) < 1e-9);
}

} // TEST_SUITE
