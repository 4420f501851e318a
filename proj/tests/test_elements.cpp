// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "polycomplex/elements.hpp"
#include "polycomplex/error.hpp"

using namespace polycomplex;

namespace {
void check(const ElementRecord &r, int p, int n, int e) {
  CHECK(r.protons() == p);
  CHECK(r.neutrons == n);
  CHECK(r.electrons == e);
}
}  // namespace

TEST_CASE("lookup returns particle counts of default isotopes") {
  check(lookup("H"), 1, 0, 1);
  check(lookup("O"), 8, 8, 8);
  check(lookup("C"), 6, 6, 6);
  // most abundant natural isotopes: 56Fe, 35Cl, 79Br, 120Sn, 238U, 63Cu, 107Ag
  check(lookup("Fe"), 26, 30, 26);
  check(lookup("Cl"), 17, 18, 17);
  check(lookup("Br"), 35, 44, 35);
  check(lookup("Sn"), 50, 70, 50);
  check(lookup("U"), 92, 146, 92);
  check(lookup("Cu"), 29, 34, 29);
  check(lookup("Ag"), 47, 60, 47);
}

TEST_CASE("explicit isotopes and charges") {
  check(lookup("H", 2), 1, 1, 1);
  check(lookup("C", 13), 6, 7, 6);
  check(lookup("Na", std::nullopt, 1), 11, 12, 10);
  check(lookup("Cl", 37, -1), 17, 20, 18);
  CHECK(lookup("Na", std::nullopt, 1).charge() == 1);
  CHECK(lookup(8).symbol == "O");
}

TEST_CASE("lookup errors") {
  auto code_of = [](auto &&f) {
    try {
      f();
    } catch (const Error &e) {
      return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of([] { lookup("Xx"); }) == ErrorCode::UnknownElement);
  CHECK(code_of([] { lookup("o"); }) == ErrorCode::UnknownElement);
  CHECK(code_of([] { lookup(0); }) == ErrorCode::UnknownElement);
  CHECK(code_of([] { lookup(119); }) == ErrorCode::UnknownElement);
  CHECK(code_of([] { lookup("C", 5); }) == ErrorCode::InvalidIsotope);
  CHECK(code_of([] { lookup("H", std::nullopt, 2); }) == ErrorCode::NegativeElectrons);
}

TEST_CASE("table covers H through Og") {
  CHECK(element_count() == 118);
  CHECK(symbol_of(1) == "H");
  CHECK(symbol_of(118) == "Og");
}

TEST_CASE("property: default mass number round-trips for every element") {
  for (int z = 1; z <= element_count(); ++z) {
    const ElementRecord base = lookup(z);
    CAPTURE(base.symbol);
    CHECK(base.protons() >= 1);
    CHECK(base.neutrons >= 0);
    CHECK(base.electrons == z);
    CHECK(lookup(base.symbol, z + default_neutrons(z), 0) == base);
    CHECK(atomic_number_of(base.symbol) == z);
  }
}

TEST_CASE("property: charge shifts electron count") {
  for (int z = 1; z <= element_count(); ++z) {
    const int e0 = lookup(z).electrons;
    for (int c : {-z, -1, 0, 1, z}) {
      CHECK(lookup(z, std::nullopt, c).electrons == e0 - c);
    }
  }
}

TEST_CASE("canonical ordering by Z then N then E") {
  CHECK(lookup("H") < lookup("H", 2));
  CHECK(lookup("H", 2) < lookup("He"));
  CHECK(lookup("O", std::nullopt, 1) < lookup("O"));
}
