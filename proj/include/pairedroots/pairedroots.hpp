#pragma once

// Paired root systems for groups generated by involutions: datum validation,
// rank-2 recurrence machinery, orbit generation with sign decomposition, and
// canonical generators of reflection subgroups.

#include "pairedroots/cone.hpp"
#include "pairedroots/core.hpp"
#include "pairedroots/datum.hpp"
#include "pairedroots/dihedral.hpp"
#include "pairedroots/group.hpp"
#include "pairedroots/io.hpp"
#include "pairedroots/roots.hpp"
#include "pairedroots/subgroup.hpp"
