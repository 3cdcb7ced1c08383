/**
 * @file generator.hpp
 * @brief SIC and GIC generation by rounds of partial activation (ALG2) and targeted tilting (ALG3).
 */
#pragma once

#include <string>
#include <vector>

#include "gic/pha.hpp"
#include "gic/prlp.hpp"

namespace gic {

/** Parameters of one cut-generation run. */
struct GicConfig {
  Criterion criterion = Criterion::H1;
  std::vector<Family> families = {Family::S, Family::T, Family::R, Family::V};
  bool tilting = false;
  int kh = 1;
  int maxCuts = 1000;
  int objPoints = 1000;
  double objTime = 5.0;
  double timeLimit = 3600.0;
  bool excludeFinalRays = true;
  bool precheck = true;
  bool crossCheck = false;       ///< solve predicted-unbounded objectives too and count disagreements
  bool enforceTiltRule = true;
  int previewCap = 50;

  /** Throws std::invalid_argument when no activation mechanism or objective is selected. */
  void validate() const;
  std::string label() const;
};

/** Collection size after a round of activations on one split. */
struct GrowthSample {
  std::string algorithm;  ///< ALG2 or ALG3
  int splitVar = -1;
  int n = 0;
  int kr = 0;        ///< rays cut so far
  int activationRays = 0;  ///< size of the ray set R_A of this activation
  int kh = 0;        ///< hyperplanes activated so far
  int points = 0;
  int rays = 0;
};

struct GenerationStats {
  int splits = 0;
  int activations = 0;
  int prlpSolves = 0;
  int optimal = 0;
  int unbounded = 0;
  int infeasible = 0;
  int rejected = 0;
  int timeouts = 0;
  int duplicates = 0;
  int skippedByPrecheck = 0;
  int predictions = 0;          ///< solves with a boundedness prediction
  int predictionMismatches = 0;
  int tiltViolations = 0;
  int finalFlagFlips = 0;       ///< final elements that disappeared (must stay 0)
  int maxRowNonzeros = 0;       ///< largest point row support seen in a PRLP
  long totalPoints = 0;
  long totalRays = 0;
  long finalPoints = 0;
  long parallelRays = 0;
  bool timedOut = false;
  std::vector<GrowthSample> growth;
};

struct GenerationResult {
  std::vector<int> sigma;
  std::vector<Cut> sics;
  std::vector<Cut> gics;
  GenerationStats stats;
  std::vector<std::string> trace;  ///< JSON lines
};

/**
 * Runs SIC generation plus targeted tilting (ALG3, when enabled) followed by k_h
 * rounds of partial activation (ALG2) on every fractional split of the cone.
 */
GenerationResult generateCuts(const Instance& inst, const Cone& cone, const GicConfig& cfg);

/** SICs of every fractional split only. */
std::vector<Cut> generateSics(const Instance& inst, const Cone& cone);

}  // namespace gic
