#include "lying/update.hpp"

#include "lying/action_model.hpp"
#include "lying/error.hpp"

namespace lying {

KripkeModel restrict_to(const KripkeModel& m, const StateSet& keep) {
  std::vector<std::size_t> old_of;
  std::vector<std::size_t> new_of(m.num_states(), Product::npos);
  std::vector<std::string> names;
  keep.for_each([&](std::size_t s) {
    new_of[s] = old_of.size();
    old_of.push_back(s);
    names.push_back(m.state_name(s));
  });
  const std::size_t n = old_of.size();
  KripkeModel out(m.signature(), std::move(names));
  for (std::size_t p = 0; p < m.atoms().size(); ++p) {
    StateSet v(n);
    for (std::size_t i = 0; i < n; ++i)
      if (m.valuation(p).test(old_of[i])) v.set(i);
    out.set_valuation(p, std::move(v));
  }
  for (std::size_t a = 0; a < m.agents().size(); ++a)
    for (std::size_t i = 0; i < n; ++i) {
      StateSet succ(n);
      m.successors(a, old_of[i]).for_each([&](std::size_t t) {
        if (new_of[t] != Product::npos) succ.set(new_of[t]);
      });
      out.set_successors(a, i, std::move(succ));
    }
  return out;
}

KripkeModel restrict(const KripkeModel& m, const Formula& f) { return restrict_to(m, extension(m, f)); }

PointedModel restrict(const PointedModel& m, const Formula& f) {
  const StateSet keep = extension(m.model, f);
  if (!keep.test(m.point)) throw Error("point '" + m.point_name() + "' is eliminated by " + print(f));
  std::size_t point = 0;
  for (std::size_t s = 0; s < m.point; ++s) point += keep.test(s);
  return PointedModel{restrict_to(m.model, keep), point};
}

KripkeModel cut_arrows(const KripkeModel& m, const StateSet& targets, std::optional<std::size_t> keep_agent) {
  KripkeModel out = m;
  for (std::size_t a = 0; a < m.agents().size(); ++a) {
    if (keep_agent && *keep_agent == a) continue;
    for (std::size_t s = 0; s < m.num_states(); ++s) out.set_successors(a, s, m.successors(a, s) & targets);
  }
  return out;
}

KripkeModel arrow_update(const KripkeModel& m, const Formula& f) {
  return cut_arrows(m, extension(m, f), std::nullopt);
}

KripkeModel agent_arrow_update(const KripkeModel& m, const std::string& speaker, const Formula& f) {
  const std::size_t a = m.agent_index(speaker);
  return cut_arrows(m, extension(m, Formula::believes(speaker, f)), a);
}

KripkeModel apply_direct(const KripkeModel& m, const Announcement& a) {
  switch (a.flavor) {
    case Flavor::PubTruth:
    case Flavor::PubLie:
      return arrow_update(m, a.formula());
    case Flavor::AgTruth:
    case Flavor::AgLie:
    case Flavor::AgBluff:
      return agent_arrow_update(m, a.speaker, a.formula());
    default:
      throw UnsupportedError("'" + print(a) + "' has no direct update semantics");
  }
}

std::optional<PointedModel> announce(const PointedModel& m, const Announcement& a) {
  KripkeModel updated = apply_direct(m.model, a);
  if (!extension(m.model, flavor_precondition(m.model.agents(), a)).test(m.point)) return std::nullopt;
  return PointedModel{std::move(updated), m.point};
}

std::string_view to_string(AnnouncementFlavor f) {
  switch (f) {
    case AnnouncementFlavor::Truthful:
      return "truthful";
    case AnnouncementFlavor::Lying:
      return "lying";
    case AnnouncementFlavor::Bluffing:
      return "bluffing";
  }
  return "?";
}

std::string_view to_string(Detection d) {
  switch (d) {
    case Detection::BelievesMistake:
      return "believes-mistake";
    case Detection::BelievesLie:
      return "believes-lie";
    case Detection::Neither:
      return "neither";
  }
  return "?";
}

AnnouncementFlavor classify(const PointedModel& m, const std::string& speaker, const Formula& f) {
  const bool truth = eval(m, Formula::believes(speaker, f));
  const bool lie = eval(m, Formula::believes(speaker, Formula::neg(f)));
  if (truth && lie) throw Error("speaker '" + speaker + "' has inconsistent beliefs at the point");
  if (truth) return AnnouncementFlavor::Truthful;
  if (lie) return AnnouncementFlavor::Lying;
  return AnnouncementFlavor::Bluffing;
}

Detection detect(const PointedModel& m, const std::string& observer, const std::string& speaker,
                 const Formula& f) {
  if (observer == speaker) throw Error("observer and speaker must differ");
  const Formula mistake =
      Formula::believes(observer, Formula::conj(Formula::neg(f), Formula::believes(speaker, f)));
  const Formula lie = Formula::believes(observer, Formula::believes(speaker, Formula::neg(f)));
  if (eval(m, mistake)) return Detection::BelievesMistake;
  if (eval(m, lie)) return Detection::BelievesLie;
  return Detection::Neither;
}

}  // namespace lying
