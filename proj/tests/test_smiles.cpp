// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "polycomplex/error.hpp"
#include "polycomplex/smiles.hpp"
#include "support.hpp"

using namespace polycomplex;

namespace {

ErrorCode parse_error(std::string_view s) {
  try {
    (void)atom_inventory(parse_smiles(s));
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected '" << s << "' to be rejected");
  return ErrorCode::InvalidArgument;
}

std::map<std::string, int> counts(std::string_view s) { return atom_inventory(s).element_counts(); }

}  // namespace

TEST_CASE("parse: water and ethanol") {
  const auto water = parse_smiles("O");
  REQUIRE(water.atoms.size() == 1);
  CHECK(water.atoms[0].symbol == "O");
  CHECK(water.bonds.empty());

  const auto ethanol = parse_smiles("CCO");
  REQUIRE(ethanol.atoms.size() == 3);
  CHECK(ethanol.atoms[0].symbol == "C");
  CHECK(ethanol.atoms[1].symbol == "C");
  CHECK(ethanol.atoms[2].symbol == "O");
  REQUIRE(ethanol.bonds.size() == 2);
  for (const auto &b : ethanol.bonds)
    CHECK(b.order == BondOrder::Single);
}

TEST_CASE("parse: bonds, branches, rings, brackets") {
  const auto g = parse_smiles("C1=CC=CC=C1");
  CHECK(g.atoms.size() == 6);
  CHECK(g.bonds.size() == 6);

  const auto acid = parse_smiles("CC(=O)O");
  CHECK(acid.bonds.size() == 3);
  int doubles = 0;
  for (const auto &b : acid.bonds)
    doubles += b.order == BondOrder::Double;
  CHECK(doubles == 1);

  const auto pct = parse_smiles("C%10CC%10");
  CHECK(pct.bonds.size() == 3);

  const auto br = parse_smiles("[13CH3:1][O-]");
  REQUIRE(br.atoms.size() == 2);
  CHECK(br.atoms[0].isotope == 13);
  CHECK(br.atoms[0].explicit_h == 3);
  CHECK(br.atoms[1].charge == -1);

  const auto stereo = parse_smiles("F/C=C\\F");
  CHECK(stereo.atoms.size() == 4);
  const auto chiral = parse_smiles("N[C@@H](C)C(=O)O");
  CHECK(chiral.atoms.size() == 6);

  const auto salt = parse_smiles("[Na+].[Cl-]");
  CHECK(salt.atoms.size() == 2);
  CHECK(salt.bonds.empty());
}

TEST_CASE("parse errors") {
  CHECK(parse_error("") == ErrorCode::EmptyInput);
  CHECK(parse_error("C1CC") == ErrorCode::UnmatchedRingClosure);
  const ErrorCode open_branch = parse_error("C1CC1(");
  CHECK((open_branch == ErrorCode::DanglingBranch || open_branch == ErrorCode::UnclosedBracket));
  CHECK(parse_error("C)") == ErrorCode::DanglingBranch);
  CHECK(parse_error("[CH4") == ErrorCode::UnclosedBracket);
  CHECK(parse_error("C=") == ErrorCode::DanglingBond);
  CHECK(parse_error("C==C") == ErrorCode::DanglingBond);
  CHECK(parse_error("Xy") == ErrorCode::UnknownElement);
  CHECK(parse_error("[Xx]") == ErrorCode::UnknownElement);
  CHECK(parse_error("C11") == ErrorCode::UnmatchedRingClosure);
  CHECK(parse_error("C$C") == ErrorCode::InvalidCharacter);
  CHECK(parse_error("C(=O)(=O)(=O)") == ErrorCode::ValenceOverflow);
  CHECK(parse_error("FF(F)") == ErrorCode::ValenceOverflow);
}

TEST_CASE("inventory: implicit hydrogens") {
  CHECK(counts("O") == std::map<std::string, int>{{"H", 2}, {"O", 1}});
  CHECK(counts("c1ccccc1") == std::map<std::string, int>{{"C", 6}, {"H", 6}});
  const auto heavy_water = atom_inventory("[2H]O[2H]");
  REQUIRE(heavy_water.entries.size() == 2);
  CHECK(heavy_water.entries[0].element.neutrons == 1);
  CHECK(heavy_water.entries[0].count == 2);
  CHECK(heavy_water.entries[1].element.symbol == "O");
  CHECK(heavy_water.total() == 3);
  CHECK(atom_inventory("CCO", false).total() == 3);
  CHECK(counts("CS(=O)(=O)C").at("H") == 6);
  CHECK(counts("OP(=O)(O)O").at("H") == 3);
  CHECK(counts("c1cc[nH]c1").at("H") == 5);
  CHECK(counts("C[N+](C)(C)C").at("H") == 12);
}

TEST_CASE("property: inventory is independent of atom order") {
  CHECK(atom_inventory("OCC").entries.size() == atom_inventory("CCO").entries.size());
  for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"OCC", "CCO"}, {"c1ccccc1O", "Oc1ccccc1"}, {"ClCCBr", "BrCCCl"}, {"[2H]OC", "CO[2H]"}}) {
    const auto x = atom_inventory(a), y = atom_inventory(b);
    REQUIRE(x.entries.size() == y.entries.size());
    for (std::size_t i = 0; i < x.entries.size(); ++i) {
      CHECK(x.entries[i].element == y.entries[i].element);
      CHECK(x.entries[i].count == y.entries[i].count);
    }
  }
}

TEST_CASE("corpus: counts agree with an independent cheminformatics toolkit") {
  const auto corpus = testing::load_count_fixture("corpus_formulas.csv");
  REQUIRE(corpus.size() == 20);
  for (const auto &[smiles, expected] : corpus) {
    CAPTURE(smiles);
    const auto inv = atom_inventory(smiles);
    CHECK(inv.element_counts() == expected);
    int total = 0;
    for (const auto &[sym, n] : expected)
      total += n;
    CHECK(inv.total() == total);
  }
}

TEST_CASE("ESOL: implicit hydrogen model agrees with the reference toolkit") {
  const auto rows = testing::load_count_fixture("esol_formulas.csv");
  REQUIRE(rows.size() == 1128);
  std::size_t agree = 0;
  for (const auto &[smiles, expected] : rows) {
    try {
      if (atom_inventory(smiles).element_counts() == expected)
        ++agree;
      else
        MESSAGE("disagreement on " << smiles);
    } catch (const Error &e) {
      MESSAGE(smiles << ": " << e.what());
    }
  }
  CHECK(agree == rows.size());
}

TEST_CASE("property: fuzzed byte strings yield a graph or a structured error") {
  std::mt19937_64 rng(20261019);
  const std::string alphabet = "CNOSPFIBrcnops()[]=#-:+@/\\.%0123456789H";
  std::uniform_int_distribution<int> len(0, 24);
  for (int i = 0; i < 20000; ++i) {
    std::string s;
    const int n = len(rng);
    const bool raw = i % 2 == 0;
    for (int k = 0; k < n; ++k)
      s.push_back(raw ? static_cast<char>(rng() & 0xFF) : alphabet[rng() % alphabet.size()]);
    try {
      const auto g = parse_smiles(s);
      for (const auto &b : g.bonds) {
        REQUIRE(b.a < g.atoms.size());
        REQUIRE(b.b < g.atoms.size());
        REQUIRE(b.a != b.b);
      }
      (void)atom_inventory(g);
    } catch (const Error &) {
    }
  }
}

TEST_CASE("formula parser") {
  CHECK(parse_formula("H2O").element_counts() == std::map<std::string, int>{{"H", 2}, {"O", 1}});
  CHECK(parse_formula("LuTaO4").element_counts() == std::map<std::string, int>{{"Lu", 1}, {"O", 4}, {"Ta", 1}});
  CHECK(parse_formula("U3(HO5)2").element_counts() == std::map<std::string, int>{{"H", 2}, {"O", 10}, {"U", 3}});
  CHECK(parse_formula("Dy(SiPd)2").element_counts() ==
        std::map<std::string, int>{{"Dy", 1}, {"Pd", 2}, {"Si", 2}});
  CHECK(parse_formula("CuSO4.5H2O").element_counts() ==
        std::map<std::string, int>{{"Cu", 1}, {"H", 10}, {"O", 9}, {"S", 1}});
  CHECK(hill_formula(atom_inventory("CCO")) == "C2H6O");
  CHECK_THROWS_AS(parse_formula("H2O)"), Error);
  CHECK_THROWS_AS(parse_formula("Qq"), Error);
  CHECK_THROWS_AS(parse_formula(""), Error);
}
