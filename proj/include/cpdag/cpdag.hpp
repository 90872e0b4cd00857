#pragma once

// Umbrella header: everything the library offers.
//
// The library decides whether a list of conditional independence statements
// has a complete causal explanation (a DAG entailing exactly those
// statements, optionally consistent with required/forbidden edges) and
// computes the orientations common to every explanation.  Pipeline:
//
//   phase I    skeleton and colliders        skeleton.hpp
//   phase II'  closure under R1-R3           rules.hpp
//   phase II'' background knowledge, R4      background.hpp
//   phase III  extension to a DAG            extend.hpp
//   phase IV   verification                  verify.hpp
//   driver     explain, common_orientations  solve.hpp
//
// chordal.hpp carries the structure underneath: chordality, join trees,
// induced orders, reversibility witnesses and extension counting.

#include "cpdag/background.hpp"
#include "cpdag/chordal.hpp"
#include "cpdag/ci.hpp"
#include "cpdag/dsep.hpp"
#include "cpdag/extend.hpp"
#include "cpdag/graph_io.hpp"
#include "cpdag/pattern.hpp"
#include "cpdag/pdag.hpp"
#include "cpdag/result.hpp"
#include "cpdag/rules.hpp"
#include "cpdag/skeleton.hpp"
#include "cpdag/solve.hpp"
#include "cpdag/text.hpp"
#include "cpdag/verify.hpp"
