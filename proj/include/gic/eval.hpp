/**
 * @file eval.hpp
 * @brief Percent gap closed, active cuts, cut selection, two-round runs and sweeps.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gic/generator.hpp"

namespace gic {

/** LP optimum after appending cuts, found by adding violated cuts until none remain. */
struct CutLpResult {
  LpStatus status = LpStatus::Numerical;
  double value = 0.0;  ///< objective in the instance's own sense
  Vec x;
  int active = 0;
  int activeSic = 0;
  int activeGic = 0;
  int rowsAdded = 0;
  int passes = 0;
};

/**
 * Re-solves the LP of @p inst with the structural cuts appended.
 * @param isSic provenance flag per cut (empty means all GICs)
 */
CutLpResult solveWithCuts(const Instance& inst, const std::vector<Inequality>& cuts,
                          const std::vector<bool>& isSic = {});

/** 100 (optCuts - optLp) / (optIp - optLp); NaN when the gap is zero. */
double percentGap(double optLp, double optIp, double optCuts);

/**
 * Greedy selection by efficacy plus the smallest 1 - |cos| against already chosen cuts.
 * Cuts nearly parallel to a chosen one are skipped. @return indices into @p cuts.
 */
std::vector<int> selectCuts(const std::vector<Cut>& cuts, int limit);

/** One row of results.csv. */
struct EvalResult {
  std::string instance;
  std::string config;
  std::string status = "ok";
  int rounds = 1;
  bool evaluable = false;
  double optLp = 0.0;
  double optIp = 0.0;
  double optSic = 0.0;
  double optGic = 0.0;
  double gapSic = 0.0;
  double gapGicPlusSic = 0.0;
  int sics = 0;
  int activeSics = 0;
  int gics = 0;
  int activeGics = 0;
  long points = 0;
  long rays = 0;
  double pctFinal = 0.0;
  double pctParallel = 0.0;
  int activations = 0;
  int prlpSolves = 0;
  double seconds = 0.0;
  GenerationStats stats;
  std::vector<Cut> sicCuts;
  std::vector<Cut> gicCuts;
};

/**
 * Generates SICs and GICs for @p cfg and evaluates the gap closed.
 * A config with no activation mechanism yields a SIC-only row.
 * With rounds = 2 the first round's cuts become rows and everything is regenerated.
 */
EvalResult evaluateConfig(const Instance& inst, const GicConfig& cfg, const KnownOptima::Entry* optima,
                          int rounds = 1);

/** Appends structural cuts as rows of a standard-form instance. */
Instance appendCuts(const Instance& inst, const std::vector<Cut>& cuts);

/** Parameter grid: "table2" (full product) or "desk" (reduced). */
std::vector<GicConfig> makeGrid(const std::string& name);

struct QuadraticFit {
  double a = 0.0, b = 0.0, c = 0.0;  ///< y = a x^2 + b x + c
  double r2 = 0.0;
  int samples = 0;
};

QuadraticFit fitQuadratic(const std::vector<double>& x, const std::vector<double>& y);

void writeResultsHeader(std::ostream& os);
void writeResultsRow(std::ostream& os, const EvalResult& r);
void writeGrowthHeader(std::ostream& os);
void writeGrowthRows(std::ostream& os, const EvalResult& r);

}  // namespace gic
