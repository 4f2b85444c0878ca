#include <doctest.h>

#include "lying/enumerate.hpp"
#include "lying/error.hpp"
#include "lying/io.hpp"
#include "lying/plausibility.hpp"
#include "support.hpp"

using namespace lying;
using lying::testing::P;

namespace {

// a cannot tell p from ~p but finds p more plausible; the point is ~p.
PointedPlausibilityModel prejudice_model() {
  PlausibilityModel m({{"a"}, {"p"}}, {"np", "p"});
  StateSet all(2);
  all.set(0);
  all.set(1);
  m.set_cell(0, 0, all);
  m.set_cell(0, 1, all);
  m.set_rank(0, 0, 1);
  m.set_rank(0, 1, 0);
  StateSet v(2);
  v.set(1);
  m.set_valuation(0, v);
  return PointedPlausibilityModel{m, 0};
}

// Most plausible members of a's class at s, straight from the definition.
std::vector<std::size_t> ref_best(const PlausibilityModel& m, std::size_t a, std::size_t s,
                                  const StateSet& among) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < m.num_states(); ++t) {
    if (!m.cell(a, s).test(t) || !among.test(t)) continue;
    bool minimal = true;
    for (std::size_t u = 0; u < m.num_states(); ++u)
      if (m.cell(a, s).test(u) && among.test(u) && m.rank(a, u) < m.rank(a, t)) minimal = false;
    if (minimal) out.push_back(t);
  }
  return out;
}

StateSet everything(std::size_t n) { return ~StateSet(n); }

}  // namespace

TEST_SUITE("plausibility") {
  TEST_CASE("hard evidence flips belief") {
    const PointedPlausibilityModel m = prejudice_model();
    CHECK(eval_pl(m, P("B{a} p & ~K{a} p & ~p")));
    const PointedPlausibilityModel r = hard_restrict(m, P("~p"));
    CHECK(r.model.num_states() == 1);
    CHECK(r.point_name() == "np");
    CHECK(eval_pl(r, P("B{a} ~p & K{a} ~p")));
    CHECK_THROWS_AS(hard_restrict(m, P("p")), Error);
  }

  TEST_CASE("belief relation is KD45 and matches the definition") {
    std::size_t models = 0;
    for_each_plausibility_model(Signature{{"a", "b"}, {"p"}}, 3, 2, [&](const PlausibilityModel& m) {
      ++models;
      const KripkeModel k = belief_model(m);
      CHECK(in_class(k, ModelClass::KD45));
      for (std::size_t a = 0; a < 2; ++a) {
        const auto rel = belief_relation(m, a);
        for (std::size_t s = 0; s < m.num_states(); ++s)
          CHECK(rel[s].members() == ref_best(m, a, s, everything(m.num_states())));
      }
      return true;
    });
    CHECK(models > 0);
  }

  TEST_CASE("knowledge, belief and conditional belief") {
    const std::vector<Formula> conds = {P("p"), P("~p"), P("true"), P("B{b} p")};
    const auto psis = lying::testing::formula_family({"a", "b"}, {"p"}, 1);
    for_each_plausibility_model(Signature{{"a", "b"}, {"p"}}, 3, 2, [&](const PlausibilityModel& m) {
      const std::size_t n = m.num_states();
      for (const auto& psi : psis) {
        const StateSet ext = extension(m, psi);
        for (std::size_t a = 0; a < 2; ++a) {
          const std::string ag = m.agents()[a];
          const StateSet k = extension(m, Formula::knows(ag, psi));
          CHECK(k.subset_of(extension(m, Formula::believes(ag, psi))));
          CHECK(extension(m, Formula::cond_believes(ag, Formula::top(), psi)) ==
                extension(m, Formula::believes(ag, psi)));
          for (const auto& c : conds) {
            const StateSet got = extension(m, Formula::cond_believes(ag, c, psi));
            const StateSet cext = extension(m, c);
            for (std::size_t s = 0; s < n; ++s) {
              bool want = true;
              for (std::size_t t : ref_best(m, a, s, cext)) want = want && ext.test(t);
              CHECK(got.test(s) == want);
            }
          }
          for (std::size_t s = 0; s < n; ++s) CHECK(k.test(s) == m.cell(a, s).subset_of(ext));
        }
      }
      return true;
    });
  }

  TEST_CASE("unsupported operators on plausibility models") {
    const PointedPlausibilityModel m = prejudice_model();
    CHECK_THROWS_AS(eval_pl(m, P("[lie p] B{a} p")), UnsupportedError);
    CHECK_THROWS_AS(eval_pl(m, P("[truth_sk p] B{a} p")), UnsupportedError);
    CHECK_THROWS_AS(eval_pl(m, P("B{c} p")), SignatureError);
  }

  TEST_CASE("plausible public lie") {
    const PointedPlausibilityModel m = prejudice_model();
    const auto [am, lie] = plausible_action(m.model.agents(), Announcement::make(Flavor::PlPubLie, P("~p")));
    CHECK_FALSE(pl_product_update(m, am, lie));
    const auto [am2, truth] = plausible_action(m.model.agents(), Announcement::make(Flavor::PlPubTruth, P("~p")));
    const auto r = pl_product_update(m, am2, truth);
    REQUIRE(r);
    CHECK(r->point_name() == "(np,truth_pl)");
    // The truth is now most plausible, but p is still considered possible.
    CHECK(eval_pl(*r, P("B{a} ~p & ~K{a} ~p")));
    CHECK(eval_pl(m, P("[truth_pl ~p] B{a} ~p")));
    CHECK(eval_pl(m, P("[lie_pl p] B{a} p")));
  }

  TEST_CASE("anti-lexicographic order") {
    for_each_plausibility_model(Signature{{"a", "b"}, {"p"}}, 3, 2, [](const PlausibilityModel& m) {
      for (const auto& ann : {Announcement::make(Flavor::PlPubLie, P("p")),
                              Announcement::make(Flavor::PlAgLie, "a", P("p")),
                              Announcement::make(Flavor::PlAgBluff, "b", P("p"))}) {
        const auto [am, point] = plausible_action(m.agents(), ann);
        (void)point;
        const PlausibilityProduct pr = pl_product(m, am);
        pr.model.validate();
        std::vector<std::pair<std::size_t, std::size_t>> origin(pr.model.num_states());
        for (std::size_t s = 0; s < m.num_states(); ++s)
          for (std::size_t x = 0; x < am.num_actions(); ++x) {
            const std::size_t i = pr.index[s][x];
            CHECK((i != PlausibilityProduct::npos) == extension(m, am.pre(x)).test(s));
            if (i != PlausibilityProduct::npos) origin[i] = {s, x};
          }
        for (std::size_t c = 0; c < 2; ++c)
          for (std::size_t i = 0; i < pr.model.num_states(); ++i)
            for (std::size_t j = 0; j < pr.model.num_states(); ++j) {
              const auto [s, x] = origin[i];
              const auto [t, y] = origin[j];
              const bool linked = m.cell(c, s).test(t) && am.cell(c, x).test(y);
              CHECK(pr.model.cell(c, i).test(j) == linked);
              if (!linked) continue;
              const bool less = am.rank(c, x) < am.rank(c, y) ||
                                (am.rank(c, x) == am.rank(c, y) && m.rank(c, s) < m.rank(c, t));
              CHECK((pr.model.rank(c, i) < pr.model.rank(c, j)) == less);
            }
      }
      return true;
    });
  }

  TEST_CASE("plausible agent announcements") {
    // The speaker's beliefs about facts do not change; the addressee who
    // finds a truthful speaker possible comes to believe the speaker believes p.
    for_each_plausibility_model(Signature{{"a", "b"}, {"p"}}, 3, 2, [](const PlausibilityModel& m) {
      for (Flavor f : {Flavor::PlAgTruth, Flavor::PlAgLie, Flavor::PlAgBluff})
        for (std::size_t s = 0; s < m.num_states(); ++s) {
          const auto [am, x] = plausible_action(m.agents(), Announcement::make(f, "a", P("p")));
          const auto r = pl_product_update(PointedPlausibilityModel{m, s}, am, x);
          if (!r) continue;
          const PointedPlausibilityModel before{m, s};
          CHECK(eval_pl(before, P("B{a} p")) == eval_pl(*r, P("B{a} p")));
          CHECK(eval_pl(before, P("K{b} p")) == eval_pl(*r, P("K{b} p")));
          if (eval_pl(before, P("~K{b} ~B{a} p"))) CHECK(eval_pl(*r, P("B{b} B{a} p")));
        }
      return true;
    });
  }

  TEST_CASE("plausibility json") {
    const PointedPlausibilityModel m = prejudice_model();
    const json j = plausibility_to_json(m.model, m.point);
    CHECK(is_plausibility_json(j));
    const PlausibilityFile f = plausibility_from_json(j);
    CHECK(f.model == m.model);
    json bad = j;
    bad["epi"]["a"] = json::array({json::array({"np", "p"})});
    CHECK_THROWS_AS(plausibility_from_json(bad), InputError);
  }
}
