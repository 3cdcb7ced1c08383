/**
 * @file gic.cpp
 * @brief Command-line front end: solve, gics, evaluate, sweep, verify and report.
 *
 * Exit codes: 0 success, 1 harness fault or failed verification, 2 input file could not
 * be parsed, 3 LP relaxation infeasible or unbounded, 4 invalid flags or flag combination.
 */
#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gic/eval.hpp"
#include "gic/oracle.hpp"

using json = nlohmann::json;
using namespace gic;

namespace {

enum ExitCode { kOk = 0, kFault = 1, kParse = 2, kLpStatus = 3, kBadFlags = 4 };

/** Raised for flag values that parse but are not acceptable. */
class FlagError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void setupLogging() {
  auto logger = spdlog::stderr_color_mt("gic");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* lvl = std::getenv("GIC_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

/** Flags shared by every command that generates cuts. */
struct GenFlags {
  std::string sc = "h1";
  std::string obj = "s,t,r,v";
  std::string tilt = "off";
  int kh = 1;
  int maxCuts = 1000;
  int objPoints = 1000;
  double objTime = 5.0;
  double timeLimit = 3600.0;
  unsigned seed = 0;
  bool crossCheck = false;

  void add(CLI::App* app) {
    app->add_option("--sc", sc, "hyperplane selection criterion: h1, h2 or h3")->capture_default_str();
    app->add_option("--obj", obj, "objective families, comma separated subset of r,v,t,s")->capture_default_str();
    app->add_option("--tilt", tilt, "targeted tilting: on or off")->capture_default_str();
    app->add_option("--kh", kh, "rounds of partial hyperplane activation (0..4)")->capture_default_str();
    app->add_option("--seed", seed, "tie-breaking seed")->capture_default_str();
    app->add_flag("--crosscheck", crossCheck, "solve objectives predicted unbounded and count disagreements");
    addLimits(app);
  }

  void addLimits(CLI::App* app) {
    app->add_option("--max-cuts", maxCuts, "maximum number of GICs")->capture_default_str();
    app->add_option("--obj-points", objPoints, "points sampled for the T objectives")->capture_default_str();
    app->add_option("--obj-time", objTime, "seconds per PRLP objective")->capture_default_str();
    app->add_option("--time-limit", timeLimit, "seconds per instance")->capture_default_str();
  }

  GicConfig config() const {
    GicConfig c;
    try {
      c.criterion = parseCriterion(sc);
      c.families = parseFamilies(obj);
    } catch (const std::invalid_argument& e) {
      throw FlagError(e.what());
    }
    if (tilt != "on" && tilt != "off") throw FlagError("--tilt expects on or off");
    c.tilting = tilt == "on";
    c.kh = kh;
    c.maxCuts = maxCuts;
    c.objPoints = objPoints;
    c.objTime = objTime;
    c.timeLimit = timeLimit;
    c.crossCheck = crossCheck;
    if (objTime <= 0 || timeLimit <= 0) throw FlagError("time limits must be positive");
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw FlagError(e.what());
    }
    return c;
  }
};

/**
 * Replaces `--config FILE` by the file's key=value pairs, inserted right after the
 * subcommand so that flags given on the command line take precedence.
 */
std::vector<std::string> expandConfig(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::vector<std::string> injected;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line without '='", lineNo);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    std::replace(key.begin(), key.end(), '_', '-');
    injected.push_back("--" + key + "=" + value);
  }
  const auto pos = args.empty() ? args.end() : args.begin() + 1;
  args.insert(pos, injected.begin(), injected.end());
  return args;
}

Instance loadInstance(const std::string& path) { return toStandardForm(parseMps(path)); }

std::string fmtNum(double v, int prec = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

int cmdSolve(const std::string& path) {
  Instance inst = loadInstance(path);
  BasicSolution sol = solveLp(inst, inst.objVec());
  if (!sol.optimal()) {
    std::cout << "status " << statusName(sol.status) << "\n";
    return kLpStatus;
  }
  const auto sigma = fractionalIndices(sol.x, inst.integer);
  std::cout << "instance " << inst.name << "\n"
            << "rows " << inst.numRows() << " cols " << inst.numCols() << "\n"
            << "status optimal\n"
            << "opt_lp " << fmtNum(inst.reportObjective(sol.objective)) << "\n"
            << "iterations " << sol.iterations << "\n"
            << "basis_hash " << sol.basisHash() << "\n"
            << "fractional " << sigma.size() << "\n";
  for (int k : sigma) std::cout << "  " << inst.colNames[k] << " = " << fmtNum(sol.x[k], 9) << "\n";
  return kOk;
}

json cutJson(const Cut& c) {
  return {{"kind", c.isSic() ? "SIC" : "GIC"},
          {"algorithm", c.algorithm},
          {"family", c.family},
          {"split", c.splitVar},
          {"step", c.step},
          {"pi", c.structural.pi},
          {"pi0", c.structural.pi0},
          {"efficacy", c.efficacy},
          {"dynamism", c.dynamism}};
}

int cmdGics(const std::string& path, const GenFlags& flags, const std::string& cutsPath, const std::string& tracePath) {
  const GicConfig cfg = flags.config();
  Instance inst = loadInstance(path);
  BasicSolution sol = solveLp(inst, inst.objVec());
  if (!sol.optimal()) {
    spdlog::error("LP relaxation is {}", statusName(sol.status));
    return kLpStatus;
  }
  Cone cone = Cone::fromSolution(inst, sol);
  GenerationResult res = generateCuts(inst, cone, cfg);

  json out;
  out["instance"] = inst.name;
  out["config"] = cfg.label();
  out["seed"] = flags.seed;
  out["space"] = "standard";
  out["num_vars"] = inst.numCols();
  out["opt_lp"] = inst.reportObjective(sol.objective);
  out["splits"] = res.sigma;
  json cuts = json::array();
  for (const auto& c : res.sics) cuts.push_back(cutJson(c));
  for (const auto& c : res.gics) cuts.push_back(cutJson(c));
  out["cuts"] = cuts;
  std::ofstream cf(cutsPath);
  if (!cf) throw std::runtime_error("cannot write '" + cutsPath + "'");
  cf << out.dump(1) << "\n";
  std::ofstream tf(tracePath);
  if (!tf) throw std::runtime_error("cannot write '" + tracePath + "'");
  for (const auto& line : res.trace) tf << line << "\n";

  const auto& st = res.stats;
  spdlog::info("{}: {} SICs, {} GICs, {} activations, {} PRLP solves", inst.name, res.sics.size(), res.gics.size(),
               st.activations, st.prlpSolves);
  std::cout << "sics " << res.sics.size() << "\ngics " << res.gics.size() << "\n";
  if (cfg.crossCheck)
    std::cout << "predictions " << st.predictions << " mismatches " << st.predictionMismatches << "\n";
  return kOk;
}

int cmdEvaluate(const std::string& path, const std::string& cutsPath, const std::string& optimaPath) {
  Instance inst = loadInstance(path);
  std::ifstream in(cutsPath);
  if (!in) throw ParseError("cannot open '" + cutsPath + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("cut file: ") + e.what());
  }
  std::vector<Inequality> sics, all;
  std::vector<bool> flags;
  for (const auto& c : doc.at("cuts")) {
    Inequality q;
    q.pi = c.at("pi").get<Vec>();
    q.pi0 = c.at("pi0").get<double>();
    if (static_cast<int>(q.pi.size()) != inst.numCols()) throw ParseError("cut dimension does not match the instance");
    const bool sic = c.value("kind", "GIC") == "SIC";
    if (sic) sics.push_back(q);
    all.push_back(q);
    flags.push_back(sic);
  }
  BasicSolution sol = solveLp(inst, inst.objVec());
  if (!sol.optimal()) return kLpStatus;
  const double optLp = inst.reportObjective(sol.objective);
  CutLpResult ls = solveWithCuts(inst, sics, std::vector<bool>(sics.size(), true));
  CutLpResult la = solveWithCuts(inst, all, flags);
  if (ls.status != LpStatus::Optimal || la.status != LpStatus::Optimal) return kLpStatus;
  std::cout << "instance " << inst.name << "\n"
            << "opt_lp " << fmtNum(optLp) << "\n"
            << "opt_sic " << fmtNum(ls.value) << "\n"
            << "opt_all " << fmtNum(la.value) << "\n"
            << "cuts " << all.size() << " sics " << sics.size() << "\n"
            << "active_sics " << la.activeSic << " active_gics " << la.activeGic << "\n";
  const KnownOptima opt = loadKnownOptima(optimaPath);
  const KnownOptima::Entry* e = opt.find(inst.name);
  if (!e || std::fabs(e->optIp - optLp) <= 1e-9) {
    std::cout << "gap unevaluable (no known optimum with a positive gap)\n";
    return kOk;
  }
  std::cout << "opt_ip " << fmtNum(e->optIp) << "\n"
            << "gap_sic " << fmtNum(percentGap(optLp, e->optIp, ls.value), 4) << "\n"
            << "gap_all " << fmtNum(percentGap(optLp, e->optIp, la.value), 4) << "\n";
  return kOk;
}

std::vector<std::string> readInstanceList(const std::string& listPath, const std::string& instanceDir) {
  std::ifstream in(listPath);
  if (!in) throw ParseError("cannot open '" + listPath + "'");
  const std::filesystem::path base = std::filesystem::path(listPath).parent_path();
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::filesystem::path> tries = {line, base / line, std::filesystem::path(instanceDir) / line,
                                                std::filesystem::path(instanceDir) / (line + ".mps")};
    std::string found;
    for (const auto& p : tries)
      if (std::filesystem::is_regular_file(p)) {
        found = p.string();
        break;
      }
    if (found.empty()) {
      spdlog::warn("instance '{}' not found; skipped", line);
      continue;
    }
    out.push_back(found);
  }
  return out;
}

int cmdSweep(const std::string& grid, const std::string& listPath, const std::string& instanceDir,
             const std::string& optimaPath, const std::string& outPath, const std::string& growthPath, int rounds,
             int jobs, const GenFlags& flags, bool limitsGiven) {
  std::vector<GicConfig> configs;
  try {
    configs = makeGrid(grid);
  } catch (const std::invalid_argument& e) {
    throw FlagError(e.what());
  }
  if (rounds < 1 || rounds > 2) throw FlagError("--rounds expects 1 or 2");
  if (jobs < 1) throw FlagError("--jobs must be positive");
  if (limitsGiven)
    for (auto& c : configs) {
      c.maxCuts = flags.maxCuts;
      c.objPoints = flags.objPoints;
      c.objTime = flags.objTime;
      c.timeLimit = flags.timeLimit;
    }
  const auto paths = readInstanceList(listPath, instanceDir);
  const KnownOptima optima = loadKnownOptima(optimaPath);

  struct Cell {
    std::size_t inst;
    std::size_t cfg;
  };
  std::vector<Instance> instances;
  for (const auto& p : paths) {
    try {
      instances.push_back(loadInstance(p));
    } catch (const std::exception& e) {
      spdlog::error("{}: {}", p, e.what());
    }
  }
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t c = 0; c < configs.size(); ++c) cells.push_back({i, c});

  auto runCell = [&](const Cell& cell) {
    const Instance& inst = instances[cell.inst];
    try {
      return evaluateConfig(inst, configs[cell.cfg], optima.find(inst.name), rounds);
    } catch (const std::exception& e) {
      EvalResult r;
      r.instance = inst.name;
      r.config = configs[cell.cfg].label();
      r.rounds = rounds;
      r.status = "error";
      spdlog::error("{} {}: {}", r.instance, r.config, e.what());
      return r;
    }
  };

  std::ofstream out(outPath);
  if (!out) throw std::runtime_error("cannot write '" + outPath + "'");
  std::ofstream growth;
  if (!growthPath.empty()) {
    growth.open(growthPath);
    if (!growth) throw std::runtime_error("cannot write '" + growthPath + "'");
    writeGrowthHeader(growth);
  }
  writeResultsHeader(out);
  for (std::size_t start = 0; start < cells.size(); start += jobs) {
    const std::size_t end = std::min(cells.size(), start + static_cast<std::size_t>(jobs));
    std::vector<std::future<EvalResult>> batch;
    for (std::size_t k = start; k < end; ++k) batch.push_back(std::async(std::launch::async, runCell, cells[k]));
    for (auto& f : batch) {
      EvalResult r = f.get();
      spdlog::info("{} {} {} sic {:.3f} gic+sic {:.3f}", r.instance, r.config, r.status, r.gapSic, r.gapGicPlusSic);
      writeResultsRow(out, r);
      if (growth.is_open()) writeGrowthRows(growth, r);
    }
  }
  std::cout << "cells " << cells.size() << " instances " << instances.size() << " configs " << configs.size()
            << "\n";
  return kOk;
}

void printTrial(const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
}

int cmdVerify(const std::string& suite, const std::string& fixture, const std::string& instancePath, int trials) {
  const std::vector<std::string> known = {"appendix-c", "validity",  "sandwich", "dominance",
                                          "monotonicity", "parallel", "growth",   "all"};
  if (std::find(known.begin(), known.end(), suite) == known.end()) throw FlagError("unknown suite '" + suite + "'");
  const bool all = suite == "all";
  bool ok = true;
  auto summary = [](const TrialSummary& t) {
    return std::to_string(t.failures) + " failures in " + std::to_string(t.applicable) + "/" +
           std::to_string(t.trials) + " applicable trials" + (t.detail.empty() ? "" : "; " + t.detail);
  };
  if (all || suite == "appendix-c") {
    auto r = tiltingRegression(fixture);
    ok &= r.pass();
    printTrial("appendix-c", r.pass(),
               std::string("broken leg ") + (r.brokenLegInvalid ? "invalid cut witnessed" : "no witness") +
                   ", enforced leg " + (r.enforcedLegRejected ? "rejected" : "accepted") + ", compliant leg " +
                   (r.compliantLegValid ? "valid" : "invalid"));
  }
  if (all || suite == "validity") {
    std::vector<Instance> insts;
    if (!instancePath.empty()) insts.push_back(loadInstance(instancePath));
    else
      for (unsigned s = 1; s <= 3; ++s) insts.push_back(randomTinyMilp(s, 4, 4));
    for (const auto& inst : insts) {
      std::vector<GicConfig> cfgs = makeGrid("desk");
      auto v = validateConfigs(inst, cfgs);
      const bool pass = v.invalid == 0;
      ok &= pass;
      printTrial("validity " + inst.name, pass,
                 std::to_string(v.cuts) + " cuts, " + std::to_string(v.invalid) + " invalid, " +
                     std::to_string(v.integerPoints) + " integer points");
    }
  }
  if (all || suite == "sandwich") {
    Instance inst = instancePath.empty() ? randomTinyMilp(2, 4, 4) : loadInstance(instancePath);
    auto s = sandwichCheck(inst, 2);
    const bool pass = s.violations == 0 && s.fullMismatches == 0;
    ok &= pass;
    printTrial("sandwich " + inst.name, pass,
               std::to_string(s.checked) + "/" + std::to_string(s.splits) + " splits, " +
                   std::to_string(s.violations) + " violations, " + std::to_string(s.fullMismatches) +
                   " full-activation mismatches");
  }
  if (all || suite == "dominance") {
    auto t = strictDominanceTrials(trials, 7);
    ok &= t.failures == 0;
    printTrial("dominance", t.failures == 0, summary(t));
  }
  if (all || suite == "monotonicity") {
    auto t = monotonicityTrials(trials, 3);
    ok &= t.failures == 0;
    printTrial("monotonicity", t.failures == 0, summary(t));
  }
  if (all || suite == "parallel") {
    auto t = parallelRayTrials(trials, 11);
    ok &= t.failures == 0;
    printTrial("parallel", t.failures == 0, summary(t));
  }
  if (all || suite == "growth") {
    auto g = compareGrowth(5, 6, 3);
    const bool pass = !g.fullPoints.empty() && g.fullPoints.back() > g.phaPoints.back();
    ok &= pass;
    std::ostringstream os;
    for (std::size_t i = 0; i < g.fullPoints.size(); ++i)
      os << (i ? ", " : "") << "k_h=" << i + 1 << " full " << g.fullPoints[i] << " pha " << g.phaPoints[i];
    printTrial("growth", pass, os.str());
  }
  return ok ? kOk : kFault;
}

std::vector<std::string> splitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double toNum(const std::string& s) { return s.empty() ? std::nan("") : std::stod(s); }

int cmdReport(const std::string& resultsPath, const std::string& growthPath, const std::string& outPath) {
  std::ifstream in(resultsPath);
  if (!in) throw ParseError("cannot open '" + resultsPath + "'");
  std::vector<std::map<std::string, std::string>> rows;
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cols = splitCsv(line);
    if (header.empty()) {
      header = cols;
      continue;
    }
    if (cols.size() != header.size()) throw ParseError("results row with " + std::to_string(cols.size()) + " columns");
    std::map<std::string, std::string> r;
    for (std::size_t i = 0; i < header.size(); ++i) r[header[i]] = cols[i];
    rows.push_back(std::move(r));
  }

  std::ofstream file;
  if (!outPath.empty()) {
    file.open(outPath);
    if (!file) throw std::runtime_error("cannot write '" + outPath + "'");
  }
  std::ostream& os = outPath.empty() ? std::cout : file;

  struct Best {
    std::map<std::string, std::string> row;
    double gic = -1e300;
    double sic = std::nan("");
    int cells = 0;
  };
  std::map<std::string, Best> best;
  std::map<std::string, std::map<std::string, double>> byCriterion;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    const std::string& name = r.at("instance");
    if (!best.count(name)) order.push_back(name);
    Best& b = best[name];
    ++b.cells;
    if (r.at("status") != "ok" && r.at("status") != "sic_only") continue;
    const double g = toNum(r.at("gap_gic"));
    if (std::isnan(g)) continue;
    if (std::isnan(b.sic)) b.sic = toNum(r.at("gap_sic"));
    if (g > b.gic) {
      b.gic = g;
      b.row = r;
    }
    const std::string crit = r.at("config").substr(0, r.at("config").find('/'));
    auto& cell = byCriterion[name][crit];
    cell = std::max(cell, g);
  }

  os << "## Best percent gap closed per instance\n\n"
     << "| Instance | OPT_LP | OPT_IP | SIC | GIC+SIC | Diff | Best config | SICs | Active SICs | GICs | Active GICs |"
        " Cells |\n"
     << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& name : order) {
    const Best& b = best[name];
    if (b.row.empty()) {
      os << "| " << name << " | | | | | | unevaluable | | | | | " << b.cells << " |\n";
      continue;
    }
    const auto& r = b.row;
    os << "| " << name << " | " << r.at("opt_lp") << " | " << r.at("opt_ip") << " | " << fmtNum(b.sic, 2) << " | "
       << fmtNum(b.gic, 2) << " | " << fmtNum(b.gic - b.sic, 2) << " | " << r.at("config") << " | " << r.at("sics")
       << " | " << r.at("active_sics") << " | " << r.at("gics") << " | " << r.at("active_gics") << " | " << b.cells
       << " |\n";
  }

  os << "\n## Best GIC+SIC gap by selection criterion\n\n| Instance | H1 | H2 | H3 |\n|---|---|---|---|\n";
  for (const auto& name : order) {
    os << "| " << name;
    for (const char* c : {"H1", "H2", "H3"}) {
      auto it = byCriterion[name].find(c);
      os << " | " << (it == byCriterion[name].end() ? std::string() : fmtNum(it->second, 2));
    }
    os << " |\n";
  }

  os << "\n## Two-round results\n\n| Instance | Config | SIC2 | GIC2 |\n|---|---|---|---|\n";
  for (const auto& r : rows)
    if (r.at("rounds") == "2" && r.at("status") == "ok")
      os << "| " << r.at("instance") << " | " << r.at("config") << " | " << fmtNum(toNum(r.at("gap_sic")), 2) << " | "
         << fmtNum(toNum(r.at("gap_gic")), 2) << " |\n";

  if (!growthPath.empty()) {
    std::ifstream gin(growthPath);
    if (!gin) throw ParseError("cannot open '" + growthPath + "'");
    std::vector<double> xs, ys;
    std::getline(gin, line);
    while (std::getline(gin, line)) {
      auto cols = splitCsv(line);
      if (cols.size() < 8) continue;
      xs.push_back(std::stod(cols[5]));
      ys.push_back(std::stod(cols[7]));
    }
    os << "\n## Generated points versus rays cut\n\n";
    if (xs.size() >= 3) {
      QuadraticFit f = fitQuadratic(xs, ys);
      os << "Quadratic fit over " << f.samples << " samples: points = " << fmtNum(f.a, 4) << " k_r^2 + "
         << fmtNum(f.b, 4) << " k_r + " << fmtNum(f.c, 4) << ", R^2 = " << fmtNum(f.r2, 4) << "\n";
    } else {
      os << "Fewer than 3 samples; no fit.\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setupLogging();
  CLI::App app{"Generalized intersection cuts from partial hyperplane activation"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string instance, cutsPath = "cuts.json", tracePath = "trace.jsonl", optimaPath = "data/known_optima.csv";
  GenFlags gen;

  auto* solve = app.add_subcommand("solve", "solve the LP relaxation and list fractional variables");
  solve->add_option("instance", instance, "MPS file")->required();

  auto* gics = app.add_subcommand("gics", "generate SICs and GICs");
  gics->add_option("instance", instance, "MPS file")->required();
  gics->add_option("--cuts", cutsPath, "output cut file")->capture_default_str();
  gics->add_option("--trace", tracePath, "output trace (JSON lines)")->capture_default_str();
  gen.add(gics);

  auto* evaluate = app.add_subcommand("evaluate", "percent gap closed by a cut file");
  evaluate->add_option("instance", instance, "MPS file")->required();
  evaluate->add_option("--cuts", cutsPath, "cut file from gics")->capture_default_str();
  evaluate->add_option("--optima", optimaPath, "known optima CSV")->capture_default_str();

  std::string grid = "desk", listPath, instanceDir = "data/instances", outPath = "results.csv", growthPath;
  int rounds = 1, jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid on a list of instances");
  sweep->add_option("--grid", grid, "table2, desk or single")->capture_default_str();
  sweep->add_option("--instances", listPath, "file with one instance path or name per line")->required();
  sweep->add_option("--instance-dir", instanceDir, "directory searched for instance names")->capture_default_str();
  sweep->add_option("--optima", optimaPath, "known optima CSV")->capture_default_str();
  sweep->add_option("--out", outPath, "results CSV")->capture_default_str();
  sweep->add_option("--growth", growthPath, "points versus rays CSV");
  sweep->add_option("--rounds", rounds, "1 or 2")->capture_default_str();
  sweep->add_option("--jobs", jobs, "cells evaluated in parallel")->capture_default_str();
  gen.addLimits(sweep);

  std::string suite = "all", fixture = "data/fixtures/tilt_fixture.mps", verifyInstance;
  int trials = 100;
  auto* verify = app.add_subcommand("verify", "run exact oracle suites");
  verify->add_option("--suite", suite,
                     "appendix-c, validity, sandwich, dominance, monotonicity, parallel, growth or all")
      ->capture_default_str();
  verify->add_option("--fixture", fixture, "tilting fixture")->capture_default_str();
  verify->add_option("--instance", verifyInstance, "tiny MPS instance for validity and sandwich");
  verify->add_option("--trials", trials, "randomized trials per suite")->capture_default_str();

  std::string resultsPath, reportOut;
  auto* report = app.add_subcommand("report", "render results.csv as Markdown tables");
  report->add_option("results", resultsPath, "results CSV")->required();
  report->add_option("--growth", growthPath, "points versus rays CSV");
  report->add_option("--out", reportOut, "Markdown output (default stdout)");

  try {
    std::vector<std::string> args = expandConfig(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadFlags;
  } catch (const ParseError& e) {
    spdlog::error("{}", e.what());
    return kParse;
  }

  try {
    if (*solve) return cmdSolve(instance);
    if (*gics) return cmdGics(instance, gen, cutsPath, tracePath);
    if (*evaluate) return cmdEvaluate(instance, cutsPath, optimaPath);
    if (*sweep) {
      const bool limits = sweep->count("--max-cuts") + sweep->count("--obj-points") + sweep->count("--obj-time") +
                              sweep->count("--time-limit") > 0;
      return cmdSweep(grid, listPath, instanceDir, optimaPath, outPath, growthPath, rounds, jobs, gen, limits);
    }
    if (*verify) return cmdVerify(suite, fixture, verifyInstance, trials);
    if (*report) return cmdReport(resultsPath, growthPath, reportOut);
  } catch (const FlagError& e) {
    spdlog::error("{}", e.what());
    return kBadFlags;
  } catch (const ParseError& e) {
    spdlog::error("{}", e.what());
    return kParse;
  } catch (const UnsupportedError& e) {
    spdlog::error("{}", e.what());
    return kParse;
  } catch (const SizeGuardError& e) {
    spdlog::error("refused: {}", e.what());
    return kFault;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kFault;
  }
  return kOk;
}
