// Orbit multipliers and the orbit table.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "szeta/error.hpp"
#include "szeta/orbits.hpp"

using namespace szeta;

namespace {

std::vector<BoundaryMap> maps_for(double theta, int L = 3) {
  const auto gens = to_boundary_maps(build_symmetric(theta, L));
  return maps_of(gens);
}

// Multiplier as the derivative of phi_w at its attracting fixed point,
// located by iterating phi_w from the middle of the last interval.
struct ChainRule {
  double x_fix;
  double m;
};

ChainRule chain_rule_oracle(const Word& word, std::span<const BoundaryMap> maps, double start) {
  double x = start;
  for (int i = 0; i < 400; ++i) x = apply_word(word, maps, x);
  double m = 1.0;
  double y = x;
  for (Symbol s : word) {
    m *= maps[s].derivative(y);
    y = maps[s].apply(y);
  }
  return {x, m};
}

Word permute(const Word& word, const std::array<int, 3>& perm) {
  Word out;
  for (Symbol s : word) out.push_back(static_cast<Symbol>(perm[s]));
  return out;
}

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / (std::string("szeta_test_") + name);
}

}  // namespace

TEST_CASE("power iteration: harness matrix [[2,1],[1,1]]") {
  const std::array<Mat2, 1> f{Mat2{2.0, 1.0, 1.0, 1.0}};
  const auto r = power_iterate(f);
  CHECK(std::exp(r.log_abs_lambda) == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));
  CHECK(r.lambda_sign == 1);
  // Eigenvector proportional to (1, (sqrt5-1)/2).
  CHECK(r.eigenvector[1] / r.eigenvector[0] ==
        doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));

  // Same product split into factors: [[1,1],[0,1]] * [[1,0],[1,1]] = [[2,1],[1,1]].
  const std::array<Mat2, 2> split{Mat2{1.0, 0.0, 1.0, 1.0}, Mat2{1.0, 1.0, 0.0, 1.0}};
  CHECK(power_iterate(split).log_abs_lambda == doctest::Approx(r.log_abs_lambda).epsilon(1e-14));
}

TEST_CASE("power iteration: elliptic products do not converge") {
  // Eigenvalues of equal modulus: the iterate keeps turning.
  for (const Mat2& m : {Mat2{1.0, -1.0, 1.0, 0.0}, Mat2{0.0, -1.0, 1.0, 0.0}}) {
    const std::array<Mat2, 1> f{m};
    try {
      power_iterate(f);
      FAIL("expected NoConvergence");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoConvergence);
    }
  }
}

TEST_CASE("multiplier: identity map has no contraction") {
  const std::vector<BoundaryMap> maps{BoundaryMap{Mat2{1.0, 0.0, 0.0, 1.0}, 1}};
  const Word word{0};
  try {
    multiplier(word, maps);
    FAIL("expected NotContracting");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotContracting);
  }
}

TEST_CASE("multiplier: matches the chain-rule derivative at the fixed point") {
  for (double theta : {10.0, 30.0, 110.0}) {
    const auto maps = maps_for(theta);
    const auto gens = to_boundary_maps(build_symmetric(theta, 3));
    for (int n = 2; n <= 8; ++n) {
      for (const auto& cls : enumerate_orbit_classes(3, n)) {
        const auto& word = cls.representative;
        const auto o = multiplier(word, maps);
        const auto ref = chain_rule_oracle(word, maps, gens[word.back()].interval.center());
        CHECK(o.m == doctest::Approx(ref.m).epsilon(1e-10));
        CHECK(o.x_fix == doctest::Approx(ref.x_fix).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("multiplier: signs, contraction, fixed point location") {
  const auto maps = maps_for(30.0);
  const auto gens = to_boundary_maps(build_symmetric(30.0, 3));
  for (int n = 2; n <= 8; ++n) {
    for (const auto& cls : enumerate_orbit_classes(3, n)) {
      const auto o = multiplier(cls.representative, maps);
      CHECK(o.u < 0.0);
      CHECK(std::abs(o.m) < 1.0);
      CHECK(std::log(std::abs(o.m)) == doctest::Approx(o.u).epsilon(1e-14));
      CHECK((o.m < 0.0) == (n % 2 == 1));
      const double image = apply_word(cls.representative, maps, o.x_fix);
      CHECK(std::abs(image - o.x_fix) <= 1e-9 * std::max(1.0, std::abs(o.x_fix)));
      CHECK(gens[cls.representative.back()].interval.contains(o.x_fix));
    }
  }
}

TEST_CASE("multiplier: power method and trace formula agree, n <= 10") {
  const auto maps = maps_for(30.0);
  for (int n = 2; n <= 10; ++n) {
    for (const auto& cls : enumerate_orbit_classes(3, n)) {
      const auto a = multiplier(cls.representative, maps);
      const auto b = multiplier_analytic(cls.representative, maps);
      CHECK(a.u == doctest::Approx(b.u).epsilon(1e-12));
      CHECK(a.m == doctest::Approx(b.m).epsilon(1e-12));
    }
  }
}

TEST_CASE("multiplier: identical for 01 and 10") {
  const auto maps = maps_for(30.0);
  const auto a = multiplier(parse_word("01"), maps);
  const auto b = multiplier(parse_word("10"), maps);
  CHECK(a.u == doctest::Approx(b.u).epsilon(1e-14));
}

// Property: u is a class function (rotations) and invariant under the
// symmetry group of the configuration, which permutes the three symbols.
TEST_CASE("multiplier: invariant under rotation and symbol permutation, n <= 6") {
  const auto maps = maps_for(30.0);
  std::array<int, 3> perm{0, 1, 2};
  for (int n = 2; n <= 6; ++n) {
    for (const auto& cls : enumerate_orbit_classes(3, n)) {
      const double u0 = multiplier(cls.representative, maps).u;
      Word r = cls.representative;
      for (int k = 1; k < n; ++k) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        CHECK(multiplier(r, maps).u == doctest::Approx(u0).epsilon(1e-12));
      }
      std::sort(perm.begin(), perm.end());
      do {
        CHECK(multiplier(permute(cls.representative, perm), maps).u ==
              doctest::Approx(u0).epsilon(1e-12));
      } while (std::next_permutation(perm.begin(), perm.end()));
      Word rev(cls.representative.rbegin(), cls.representative.rend());
      CHECK(multiplier(rev, maps).u == doctest::Approx(u0).epsilon(1e-12));
    }
  }
}

TEST_CASE("orbit table: sizes and multiplicities") {
  const auto g = build_symmetric(30.0, 3);
  const auto table = build_orbit_table(g, 13);
  CHECK(table.max_length == 13);
  CHECK(table.alphabet == 3);
  CHECK(table.fingerprint == fingerprint(g));
  REQUIRE(table.by_length.size() == 14);
  std::size_t classes = 0;
  for (int n = 1; n <= 13; ++n) {
    const auto expected = enumerate_orbit_classes(3, n);
    REQUIRE(table.by_length[n].size() == expected.size());
    std::uint64_t mult = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(table.representatives[n][i] == expected[i].representative);
      CHECK(table.by_length[n][i].multiplicity == expected[i].rotation_count);
      CHECK(table.by_length[n][i].n == n);
      mult += static_cast<std::uint64_t>(table.by_length[n][i].multiplicity);
    }
    CHECK(mult == word_count(3, n));
    classes += expected.size();
  }
  CHECK(table.class_count() == classes);
}

TEST_CASE("orbit table: deterministic, independent of thread count") {
  const auto g = build_symmetric(40.0, 3);
  const auto a = build_orbit_table(g, 12, 1);
  const auto b = build_orbit_table(g, 12, 1);
  const auto c = build_orbit_table(g, 12, 3);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("orbit table: right-angled case has equal 2-cycles") {
  const auto table = build_orbit_table(build_symmetric(90.0, 3), 2);
  REQUIRE(table.by_length[2].size() == 3);
  const double u = table.by_length[2][0].u;
  for (const auto& o : table.by_length[2]) CHECK(o.u == doctest::Approx(u).epsilon(1e-13));
}

// Property: every length-n orbit contracts at least as much as n/2 copies of
// the weakest 2-cycle.
TEST_CASE("orbit table: u_n <= (n/2) max u_2") {
  for (double theta : {10.0, 40.0, 110.0}) {
    const auto table = build_orbit_table(build_symmetric(theta, 3), 12);
    double max_u2 = -INFINITY;
    for (const auto& o : table.by_length[2]) max_u2 = std::max(max_u2, o.u);
    for (int n = 2; n <= 12; ++n) {
      for (const auto& o : table.by_length[n]) CHECK(o.u <= 0.5 * n * max_u2 + 1e-12);
    }
  }
}

TEST_CASE("orbit cache: bit-exact round trip") {
  const auto g = build_symmetric(30.0, 3);
  const auto table = build_orbit_table(g, 9);
  const auto path = temp_path("roundtrip.cache");
  save_orbit_table(table, path);
  CHECK(load_orbit_table(path) == table);
  CHECK(cached_orbit_table(g, 9, path) == table);
  std::filesystem::remove(path);
}

TEST_CASE("orbit cache: stale or corrupt files") {
  const auto g30 = build_symmetric(30.0, 3);
  const auto g40 = build_symmetric(40.0, 3);
  const auto path = temp_path("stale.cache");
  save_orbit_table(build_orbit_table(g30, 6), path);

  // Different group or order: rebuilt and rewritten.
  CHECK(cached_orbit_table(g40, 6, path) == build_orbit_table(g40, 6));
  CHECK(load_orbit_table(path).fingerprint == fingerprint(g40));
  CHECK(cached_orbit_table(g40, 8, path) == build_orbit_table(g40, 8));

  {
    std::ofstream out(path, std::ios::trunc);
    out << "szeta-orbit-cache 1\nfingerprint zz alphabet 3 max_length 4\nbogus\n";
  }
  try {
    load_orbit_table(path);
    FAIL("expected CacheError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CacheError);
  }
  {
    std::ofstream out(path, std::ios::trunc);
    out << "something else entirely\n";
  }
  try {
    load_orbit_table(path);
    FAIL("expected CacheError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CacheError);
  }
  std::filesystem::remove(path);
}
