#include "doctest.h"
#include "hecke/affweyl.hpp"
#include "oracles.hpp"

using namespace hecke;

TEST_CASE("group law and identities") {
  const RootDatum* gl3 = load_preset("GL3_Q2");
  const LeviContext* ctx = levi_context(gl3, gl3->full());
  AffWeylElt a{{1, -2, 0}, 3}, b{{0, 4, 1}, 5};
  // associativity on a few fixed elements
  AffWeylElt c{{2, 0, -1}, 1};
  CHECK(ctx->mult(ctx->mult(a, b), c) == ctx->mult(a, ctx->mult(b, c)));
  CHECK(ctx->mult(a, ctx->identity()) == a);
  CHECK(ctx->mult(a, ctx->inverse(a)) == ctx->identity());
  CHECK(ctx->length(ctx->identity()) == 0);
  CHECK(ctx->length(a) == ctx->length(ctx->inverse(a)));
}

TEST_CASE("SL2 alternating word has length 3") {
  const RootDatum* sl2 = load_preset("SL2_Q2");
  const LeviContext* ctx = levi_context(sl2, sl2->full());
  REQUIRE(ctx->simples().size() == 2);
  AffWeylElt s1 = ctx->simples()[0].elt;  // finite alpha
  AffWeylElt s0 = ctx->simples()[1].elt;  // affine
  AffWeylElt x = ctx->mult(ctx->mult(s0, s1), s0);
  CHECK(ctx->length(x) == 3);
  CHECK(ctx->length(ctx->mult(s0, s1)) == 2);
}

TEST_CASE("GL3 dominant regular translation has length 4") {
  const RootDatum* gl3 = load_preset("GL3_Q2");
  const LeviContext* ctx = levi_context(gl3, gl3->full());
  // <l, alpha> = <l, beta> = 1: l = (1, 0, -1)
  AffWeylElt t = ctx->translation({1, 0, -1});
  CHECK(ctx->length(t) == 4);  // |<l,a>|+|<l,b>|+|<l,theta>| = 1+1+2
}

TEST_CASE("length equals Cayley distance (BFS oracle, radius 4)") {
  for (const auto& name : preset_names()) {
    const RootDatum* rd = load_preset(name);
    const LeviContext* ctx = levi_context(rd, rd->full());
    auto dist = oracle::cayley_distances(ctx, 4, 7);
    int checked = 0;
    for (const auto& [x, d] : dist) {
      if (d > 4) continue;
      CHECK(ctx->length(x) == d);
      ++checked;
    }
    CHECK(checked >= 9);  // infinite dihedral: |ball(4)| = 9
  }
}

TEST_CASE("reduced word reproduces the element and its length") {
  const RootDatum* gl3 = load_preset("GL3_Q2");
  const LeviContext* ctx = levi_context(gl3, gl3->full());
  auto dist = oracle::cayley_distances(ctx, 4, 7);
  for (const auto& [x, d] : dist) {
    if (d > 4) continue;
    const auto& w = ctx->reducedWord(x);
    CHECK((int)w.letters.size() == ctx->length(x));
    AffWeylElt prod = ctx->identity();
    for (size_t s : w.letters) prod = ctx->mult(prod, ctx->simples()[s].elt);
    prod = ctx->mult(prod, w.omegaPart);
    CHECK(prod == x);
    CHECK(ctx->length(w.omegaPart) == 0);
  }
}

TEST_CASE("identity reduces to empty word; simples to themselves") {
  const RootDatum* gl2 = load_preset("GL2_Q2");
  const LeviContext* ctx = levi_context(gl2, gl2->full());
  auto wid = ctx->reducedWord(ctx->identity());
  CHECK(wid.letters.empty());
  CHECK(wid.omegaPart == ctx->identity());
  for (size_t s = 0; s < ctx->simples().size(); ++s) {
    auto w = ctx->reducedWord(ctx->simples()[s].elt);
    CHECK(w.letters == std::vector<size_t>{s});
    CHECK(w.omegaPart == ctx->identity());
  }
  // the Omega generator of GL2 is length zero: empty word + itself
  REQUIRE(ctx->omegaGens().size() == 1);
  auto wu = ctx->reducedWord(ctx->omegaGens()[0]);
  CHECK(wu.letters.empty());
  CHECK(wu.omegaPart == ctx->omegaGens()[0]);
  CHECK(ctx->length(ctx->omegaGens()[0]) == 0);
}

TEST_CASE("omega exponents round-trip") {
  const RootDatum* gl3 = load_preset("GL3_Q2");
  const LeviContext* ctx = levi_context(gl3, 0);  // Levi Z: Omega = Lambda
  CHECK(ctx->omegaGens().size() == 3);
  AffWeylElt u = ctx->translation({2, -1, 3});
  auto e = ctx->omegaExponents(u);
  AffWeylElt prod = ctx->identity();
  for (size_t i = 0; i < e.size(); ++i) {
    AffWeylElt g = e[i] >= 0 ? ctx->omegaGens()[i] : ctx->inverse(ctx->omegaGens()[i]);
    for (int t = 0; t < std::abs(e[i]); ++t) prod = ctx->mult(prod, g);
  }
  CHECK(prod == u);
}

TEST_CASE("min coset reps") {
  const RootDatum* gl3 = load_preset("GL3_Q2");
  auto all = min_coset_reps(gl3, gl3->full(), gl3->full());
  CHECK(all.size() == 1);
  auto rB = min_coset_reps(gl3, 0, gl3->full());
  CHECK(rB.size() == 6);
  auto rA = min_coset_reps(gl3, gl3->parseSubset("alpha"), gl3->full());
  CHECK(rA.size() == 3);
  const RootDatum* gl2 = load_preset("GL2_Q2");
  CHECK(min_coset_reps(gl2, 0, gl2->full()).size() == 2);
  // minimality: l(s d) = l(d) + 1 for s in J
  const LeviContext* ctx = levi_context(gl3, gl3->full());
  Subset a = gl3->parseSubset("alpha");
  for (const auto& d : min_coset_reps(gl3, a, gl3->full())) {
    AffWeylElt s = ctx->finite(gl3->w0Simple(0));
    CHECK(ctx->length(ctx->mult(s, d)) == ctx->length(d) + 1);
  }
}

TEST_CASE("longest elements") {
  const RootDatum* gl3 = load_preset("GL3_Q2");
  CHECK(longest_element(gl3, 0) == levi_context(gl3, 0)->identity());
  const LeviContext* ctx = levi_context(gl3, gl3->full());
  CHECK(ctx->length(longest_element(gl3, gl3->full())) == 3);
  CHECK(ctx->length(longest_element(gl3, gl3->parseSubset("alpha"))) == 1);
}

TEST_CASE("M-positivity") {
  const RootDatum* sl2 = load_preset("SL2_Q2");
  const LeviContext* ctx = levi_context(sl2, 0);
  AffWeylElt plus = ctx->translation({1});
  AffWeylElt minus = ctx->translation({-1});
  CHECK(is_M_positive(sl2, 0, sl2->full(), plus));
  CHECK(!is_M_positive(sl2, 0, sl2->full(), minus));
  CHECK(is_M_negative(sl2, 0, sl2->full(), minus));
  CHECK(is_M_positive(sl2, 0, sl2->full(), ctx->identity()));
  // finite part outside the Levi: error
  AffWeylElt bad{{0}, 1};
  CHECK_THROWS_AS(is_M_positive(sl2, 0, sl2->full(), bad), HeckeError);
  // M+ closed under the group law, M- = inverse monoid (sampled)
  const RootDatum* gl3 = load_preset("GL3_Q2");
  Subset J = gl3->parseSubset("alpha");
  const LeviContext* c3 = levi_context(gl3, J);
  std::vector<AffWeylElt> mplus;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int w : gl3->subgroupOf(J)) {
          AffWeylElt x{{a, b, c}, w};
          if (is_M_positive(gl3, J, gl3->full(), x)) mplus.push_back(x);
        }
  for (size_t i = 0; i < mplus.size(); i += 7)
    for (size_t j = 0; j < mplus.size(); j += 11) {
      AffWeylElt prod = c3->mult(mplus[i], mplus[j]);
      CHECK(is_M_positive(gl3, J, gl3->full(), prod));
      CHECK(is_M_negative(gl3, J, gl3->full(), c3->inverse(prod)));
    }
}

TEST_CASE("deep central translations") {
  const RootDatum* gl3 = load_preset("GL3_Q2");
  Subset J = gl3->parseSubset("alpha");
  AffWeylElt a = deep_central_translation(gl3, J, gl3->full(), +1, 4);
  const LeviContext* ctxJ = levi_context(gl3, J);
  CHECK(ctxJ->length(a) == 0);  // central in the Levi
  for (size_t r : gl3->posRootsOf(gl3->full())) {
    if (gl3->rootInSubset(r, J)) {
      CHECK(gl3->pairing(a.lambda, r) == 0);
    } else {
      CHECK(gl3->pairing(a.lambda, r) >= 4);
    }
  }
  AffWeylElt an = deep_central_translation(gl3, J, gl3->full(), -1, 4);
  for (size_t r : gl3->posRootsOf(gl3->full()))
    if (!gl3->rootInSubset(r, J)) CHECK(gl3->pairing(an.lambda, r) <= -4);
}

TEST_CASE("levi affine simples have levi-length one") {
  for (const auto& name : preset_names()) {
    const RootDatum* rd = load_preset(name);
    for (Subset J = 0; J <= rd->full(); ++J) {
      const LeviContext* ctx = levi_context(rd, J);
      for (const auto& s : ctx->simples()) CHECK(ctx->length(s.elt) == 1);
      for (const auto& u : ctx->omegaGens()) CHECK(ctx->length(u) == 0);
    }
  }
}
