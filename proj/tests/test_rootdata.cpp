#include "doctest.h"
#include "hecke/rootdata.hpp"

using namespace hecke;

TEST_CASE("load presets") {
  const RootDatum* sl2 = load_preset("SL2_Q2");
  CHECK(sl2->nroots() == 1);
  CHECK(sl2->rank() == 1);
  CHECK(sl2->w0Order() == 2);

  const RootDatum* gl3 = load_preset("GL3_Q2");
  CHECK(gl3->nroots() == 2);
  CHECK(gl3->rank() == 3);
  CHECK(gl3->w0Order() == 6);
  CHECK(gl3->posRoots().size() == 3);

  CHECK_THROWS_AS(load_preset("E8_Q2"), HeckeError);
}

TEST_CASE("GL2 basics") {
  const RootDatum* gl2 = load_preset("GL2_Q2");
  CHECK(gl2->w0Order() == 2);
  CHECK(gl2->posRoots().size() == 1);
  CHECK(gl2->pairing({1, 0}, 0) == 1);
  CHECK(gl2->pairing({0, 1}, 0) == -1);
}

TEST_CASE("opposition involution") {
  const RootDatum* gl3 = load_preset("GL3_Q2");
  Subset a = gl3->parseSubset("alpha");
  Subset b = gl3->parseSubset("beta");
  CHECK(gl3->opposition(a) == b);         // longest element of S3 swaps them
  CHECK(gl3->opposition(b) == a);
  CHECK(gl3->opposition(0) == 0);
  CHECK(gl3->opposition(gl3->full()) == gl3->full());

  const RootDatum* gl2 = load_preset("GL2_Q2");
  CHECK(gl2->opposition(gl2->parseSubset("alpha")) == gl2->parseSubset("alpha"));

  for (const auto& name : preset_names()) {
    const RootDatum* rd = load_preset(name);
    for (Subset J = 0; J <= rd->full(); ++J)
      CHECK(rd->opposition(rd->opposition(J)) == J);
  }
}

TEST_CASE("Levi subgroup orders and positive roots") {
  const RootDatum* gl3 = load_preset("GL3_Q2");
  CHECK(gl3->subgroupOf(0).size() == 1);
  CHECK(gl3->subgroupOf(gl3->parseSubset("alpha")).size() == 2);
  CHECK(gl3->subgroupOf(gl3->full()).size() == 6);
  CHECK(gl3->posRootsOf(gl3->parseSubset("alpha")).size() == 1);
  CHECK(gl3->posRootsOf(gl3->full()).size() == 3);
  // highest root of the full system has height 2
  auto comps = gl3->componentsOf(gl3->full());
  CHECK(comps.size() == 1);
  CHECK(gl3->posRoots()[gl3->highestRoot(comps[0])].height == 2);
}

TEST_CASE("upper set lattices") {
  CHECK(upper_sets(0).elements.size() == 2);
  CHECK(upper_sets(1).elements.size() == 3);
  CHECK(upper_sets(2).elements.size() == 6);
  CHECK(upper_sets(3).elements.size() == 20);
  CHECK_THROWS_AS(upper_sets(5), HeckeError);

  // closure under union and intersection, contains empty and full
  auto lat = upper_sets(2);
  auto isElem = [&](uint32_t x) {
    for (auto e : lat.elements)
      if (e == x) return true;
    return false;
  };
  CHECK(isElem(0));
  CHECK(isElem((1u << 4) - 1));
  for (auto a : lat.elements)
    for (auto b : lat.elements) {
      CHECK(isElem(a | b));
      CHECK(isElem(a & b));
    }
}

TEST_CASE("preset reload from file text matches builtin") {
  auto d = parse_preset_text(preset_text("GL3_Q2"));
  CHECK(d.name == "GL3_Q2");
  CHECK(d.p == 2);
  CHECK(d.centralSeeds.size() == 3);
  RootDatum rd(d);
  CHECK(rd.w0Order() == 6);
}

TEST_CASE("levis restrict consistently") {
  for (const auto& name : preset_names()) {
    const RootDatum* rd = load_preset(name);
    for (Subset J = 0; J <= rd->full(); ++J) {
      // every positive root of the sub-datum is a positive root of the parent
      for (size_t r : rd->posRootsOf(J)) CHECK(rd->rootInSubset(r, J));
      // pairings restrict consistently: tested via the shared pairing matrix
      auto sub = rd->subgroupOf(J);
      CHECK(!sub.empty());
    }
  }
}
