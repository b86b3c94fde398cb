#ifndef MEADOW_MEADOW_HPP
#define MEADOW_MEADOW_HPP

#include "meadow/botworld.hpp"
#include "meadow/errors.hpp"
#include "meadow/flatten.hpp"
#include "meadow/generate.hpp"
#include "meadow/semantics.hpp"
#include "meadow/soundness.hpp"
#include "meadow/structures.hpp"
#include "meadow/suites.hpp"
#include "meadow/syntax.hpp"
#include "meadow/trivalent.hpp"

#endif  // MEADOW_MEADOW_HPP
