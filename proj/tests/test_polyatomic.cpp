// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>

#include "polycomplex/error.hpp"
#include "polycomplex/polyatomic.hpp"
#include "polycomplex/serialize.hpp"
#include "polycomplex/smiles.hpp"

using namespace polycomplex;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("water: cell enumeration and electron blocks") {
  const PolyatomicComplex p = build_polyatomic_complex(atom_inventory("O"), PolyatomicConfig{}, 0);
  // O: 8 protons + 8 neutrons + 8 electrons; H: 1 proton + 1 electron, twice
  CHECK(p.C.size() == 24 + 2 + 2);
  CHECK(p.E.size() == 10);
  CHECK_FALSE(p.F.has_value());
  CHECK_FALSE(p.D_E.has_value());
  CHECK(p.radial_blocks == std::vector<Eigen::Index>{1, 1, 8});
  CHECK(p.force_blocks == std::vector<Eigen::Index>{1, 1, 16});
  CHECK(p.C.is_closure_finite());
}

TEST_CASE("single atom reduces to its atomic complex") {
  PolyatomicConfig cfg;
  cfg.using_force_model = true;
  const PolyatomicComplex p = build_polyatomic_complex(std::vector<ElementRecord>{lookup("He")}, cfg, 5);
  const AtomicComplex a = build_atomic_complex(AtomSpec::from(lookup("He")), cfg.atomic, {.seed = 5});
  REQUIRE(p.F.has_value());
  CHECK(*p.F == a.D_F);
  CHECK(p.C.size() == a.K.size());
}

TEST_CASE("two hydrogens with Coulomb update") {
  PolyatomicConfig cfg;
  cfg.using_force_model = true;
  const std::vector<Eigen::Vector3d> coords{{0, 0, 0}, {0.74 * kBohrPerAngstrom, 0, 0}};
  const PolyatomicComplex p =
      build_polyatomic_complex(std::vector<ElementRecord>{lookup("H"), lookup("H")}, cfg, 1, &coords);
  REQUIRE(p.F.has_value());
  const Eigen::MatrixXcd &F = *p.F;
  CHECK(F.rows() == 2);
  CHECK(F(0, 1) == F(1, 0));
  CHECK(std::abs(F(0, 1).real() - 1.0 / (0.74 * kBohrPerAngstrom)) < 1e-12);
  CHECK(F(0, 1).imag() == 0.0);
}

TEST_CASE("update_forces: Coulomb in atomic units") {
  CHECK(coulomb_energy(1, 1, 1.0) == 1.0);
  CHECK(coulomb_energy(1, -1, 1.0) == -1.0);
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(2, 2);
  update_forces(F, {1, 1}, {1.0, 1.0}, {{0, 0, 0}, {1, 0, 0}});
  CHECK(F(0, 1).real() == 1.0);
  update_forces(F, {1, 1}, {1.0, -1.0}, {{0, 0, 0}, {1, 0, 0}});
  CHECK(F(0, 1).real() == -1.0);
  CHECK(code_of([&] { update_forces(F, {1, 1}, {1.0, 1.0}, {{0, 0, 0}, {0, 0, 0}}); }) ==
        ErrorCode::CoincidentAtoms);
}

TEST_CASE("construction errors") {
  CHECK(code_of([] { build_polyatomic_complex(std::vector<ElementRecord>{}, PolyatomicConfig{}, 0); }) ==
        ErrorCode::EmptySystem);
  const std::vector<Eigen::Vector3d> one{{0, 0, 0}};
  CHECK(code_of([&] {
          build_polyatomic_complex(std::vector<ElementRecord>{lookup("H"), lookup("H")}, PolyatomicConfig{}, 0, &one);
        }) == ErrorCode::CoordinateCountMismatch);
}

TEST_CASE("property: direct-sum shapes and block-diagonal matrices before updates") {
  PolyatomicConfig cfg;
  cfg.using_force_model = true;
  cfg.using_radial = true;
  cfg.rdf_table = RdfTable{{0.5, 0.0}, {1.0, 2.0}};
  const auto inv = atom_inventory("CC(=O)N");
  const PolyatomicComplex p = build_polyatomic_complex(inv, cfg, 3);
  Eigen::Index pn = 0, e = 0;
  for (const auto &r : p.atoms) {
    pn += r.protons() + r.neutrons;
    e += r.electrons;
  }
  CHECK(p.F->rows() == pn);
  CHECK(p.D_E->rows() == e);
  const Eigen::MatrixXcd &F = *p.F;
  CHECK((F - F.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  // off-diagonal (cross-atom) blocks are symmetric: F[i,j] = F[j,i]
  std::vector<Eigen::Index> off{0};
  for (auto b : p.force_blocks)
    off.push_back(off.back() + b);
  for (std::size_t i = 0; i < p.force_blocks.size(); ++i)
    for (std::size_t j = 0; j < p.force_blocks.size(); ++j)
      if (i != j)
        for (Eigen::Index a = off[i]; a < off[i + 1]; ++a)
          for (Eigen::Index b = off[j]; b < off[j + 1]; ++b)
            CHECK(F(a, b) == F(b, a));

  // without updates, everything off the diagonal blocks is zero
  PolyatomicConfig raw = cfg;
  raw.using_force_model = false;
  raw.using_radial = false;
  const PolyatomicComplex q = build_polyatomic_complex(inv, raw, 3);
  std::size_t cells = 0;
  for (std::size_t i = 0; i < q.atoms.size(); ++i)
    cells += q.cell_offsets[i + 1] - q.cell_offsets[i];
  CHECK(cells == q.C.size());
}

TEST_CASE("property: atom-index invariance of the serialization") {
  std::mt19937_64 rng(99);
  std::vector<ElementRecord> atoms = atom_inventory("CC(=O)Nc1ccccc1").expand();
  const std::string reference = fingerprint(build_polyatomic_complex(atoms, PolyatomicConfig{}, 7));
  for (int t = 0; t < 10; ++t) {
    std::shuffle(atoms.begin(), atoms.end(), rng);
    CHECK(fingerprint(build_polyatomic_complex(atoms, PolyatomicConfig{}, 7)) == reference);
  }
}

TEST_CASE("RDF: ideal gas in a periodic box tends to one") {
  Rng rng = make_stream(1, 0, 0);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<Eigen::Vector3d> gas(1000);
  for (auto &x : gas)
    x = {u(rng), u(rng), u(rng)};
  RdfParams p;
  p.r_max = 5.0;
  p.n_bins = 25;
  p.box = 10.0;
  Rng pick = make_stream(2, 0, 4);
  const RdfResult g = radial_distribution(gas, p, pick);
  for (Eigen::Index b = 0; b < g.g.size(); ++b)
    if (g.r(b) > 1.0)
      CHECK(std::abs(g.g(b) - 1.0) < 0.1);
}

TEST_CASE("RDF: a single pair fills exactly one bin") {
  Rng rng = make_stream(0, 0, 4);
  RdfParams p;
  p.r_max = 5.0;
  p.n_bins = 10;
  const RdfResult g = radial_distribution({{0, 0, 0}, {2.3, 0, 0}}, p, rng);
  int nonzero = 0;
  for (Eigen::Index b = 0; b < g.g.size(); ++b)
    if (g.g(b) != 0.0) {
      ++nonzero;
      CHECK(g.r(b) - 0.5 * g.bin_width <= 2.3);
      CHECK(g.r(b) + 0.5 * g.bin_width > 2.3);
    }
  CHECK(nonzero == 1);
  CHECK(code_of([&] { radial_distribution({{0, 0, 0}}, p, rng); }) == ErrorCode::InsufficientAtoms);
  RdfParams bad = p;
  bad.n_bins = 0;
  CHECK(code_of([&] { radial_distribution({{0, 0, 0}, {1, 0, 0}}, bad, rng); }) == ErrorCode::BadHistogramParams);
}

TEST_CASE("RDF: external table is used verbatim") {
  PolyatomicConfig cfg;
  cfg.using_radial = true;
  cfg.rdf_table = RdfTable{{1.0, 0.25}, {2.0, 0.75}, {3.0, 1.5}};
  const std::vector<Eigen::Vector3d> coords{{0, 0, 0}, {2.0, 0, 0}};
  const PolyatomicComplex p =
      build_polyatomic_complex(std::vector<ElementRecord>{lookup("H"), lookup("H")}, cfg, 0, &coords);
  REQUIRE(p.D_E.has_value());
  CHECK((*p.D_E)(0, 1) == 0.75);
  CHECK((*p.D_E)(1, 0) == 0.75);
}

TEST_CASE("property: construction time grows roughly linearly") {
  auto time_for = [](int n) {
    const std::vector<ElementRecord> atoms(static_cast<std::size_t>(n), lookup("C"));
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      (void)build_polyatomic_complex(atoms, PolyatomicConfig{}, 0);
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
  };
  double prev = time_for(8);
  for (int n : {16, 32, 64, 128}) {
    const double t = time_for(n);
    CHECK(t <= 2.5 * prev + 1e-4);
    prev = t;
  }
}
