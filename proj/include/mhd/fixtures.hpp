#pragma once

#include "mhd/io.hpp"

namespace mhd {

/// Hand-transcribed reference data used by the regression suite.
/// Names: table1 (30 preferences over 3x2), example1 (two preferences over
/// 4x2), lemma8_ballots (a ballot family on a 5-chain, n=3), appendixA_graph
/// (table1 plus its documented graph facts).
struct FixtureCase {
    std::string name;
    std::optional<LabeledDomain> domain;
    std::optional<Thresholds> thresholds;
    std::optional<Fbr> fbr;
};

FixtureCase load_fixture(const std::string& name);

/// Runs the fixture's full assertion list; refuted reports name each failing
/// assertion.
VerificationReport run_fixture_assertions(const std::string& name);

}  // namespace mhd
