#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lying/formula.hpp"
#include "lying/kripke.hpp"

namespace lying {

/// M|f: keep the states satisfying f. The result may be empty.
KripkeModel restrict(const KripkeModel& m, const Formula& f);
KripkeModel restrict_to(const KripkeModel& m, const StateSet& keep);
/// Throws Error when the point does not survive.
PointedModel restrict(const PointedModel& m, const Formula& f);

/// Cuts every agent's arrows to `targets`, except those of `keep_agent`.
KripkeModel cut_arrows(const KripkeModel& m, const StateSet& targets, std::optional<std::size_t> keep_agent);
/// M^f: every agent's arrows cut to targets satisfying f in the input model.
KripkeModel arrow_update(const KripkeModel& m, const Formula& f);
/// M^f_a: the speaker keeps her arrows; every other agent's arrows are cut
/// to targets where the speaker believes f.
KripkeModel agent_arrow_update(const KripkeModel& m, const std::string& speaker, const Formula& f);

/// Direct semantics of the Pub and Ag flavors. Empty when the flavor's
/// precondition fails at the point; other flavors raise UnsupportedError.
std::optional<PointedModel> announce(const PointedModel& m, const Announcement& a);
/// The announcement's model transformation without the precondition check.
KripkeModel apply_direct(const KripkeModel& m, const Announcement& a);

enum class AnnouncementFlavor { Truthful, Lying, Bluffing };
enum class Detection { BelievesMistake, BelievesLie, Neither };

std::string_view to_string(AnnouncementFlavor f);
std::string_view to_string(Detection d);

/// Throws Error when the speaker believes both f and ~f at the point.
AnnouncementFlavor classify(const PointedModel& m, const std::string& speaker, const Formula& f);
Detection detect(const PointedModel& m, const std::string& observer, const std::string& speaker,
                 const Formula& f);

}  // namespace lying
