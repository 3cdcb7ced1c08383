/**
 * @file mps.cpp
 * @brief MPS reader (fixed and free format).
 */
#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "gic/instance.hpp"

namespace gic {

namespace {

enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, End };

std::vector<std::string> splitWs(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/** Fixed-format fields: columns 2-3, 5-12, 15-22, 25-36, 40-47, 50-61 (1-based). */
std::vector<std::string> splitFixed(const std::string& line) {
  static const int starts[] = {1, 4, 14, 24, 39, 49};
  static const int lens[] = {2, 8, 8, 12, 8, 12};
  std::vector<std::string> out;
  for (int f = 0; f < 6; ++f) {
    if (static_cast<int>(line.size()) <= starts[f]) {
      out.emplace_back();
      continue;
    }
    out.push_back(trim(line.substr(starts[f], lens[f])));
  }
  return out;
}

Rational number(const std::string& tok, int line) {
  try {
    return parseDecimal(tok);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed number '" + tok + "'", line);
  }
}

struct Reader {
  Instance inst;
  std::string objName;
  std::unordered_map<std::string, int> rowIndex;
  std::unordered_map<std::string, int> colIndex;
  std::unordered_set<std::string> freeRows;
  std::vector<std::unordered_set<int>> colRowsSeen;
  bool inInteger = false;
  bool sawRows = false;
  int rowCount = 0;

  int column(const std::string& name) {
    auto it = colIndex.find(name);
    if (it != colIndex.end()) return it->second;
    const int j = inst.numCols();
    colIndex.emplace(name, j);
    inst.colNames.push_back(name);
    inst.obj.emplace_back(0);
    inst.lower.emplace_back(Rational(0));
    inst.upper.emplace_back(std::nullopt);
    inst.integer.push_back(inInteger);
    colRowsSeen.emplace_back();
    return j;
  }

  void addEntry(int j, const std::string& rowName, const std::string& value, int line) {
    const Rational v = number(value, line);
    if (rowName == objName) {
      if (!colRowsSeen[j].insert(-1).second)
        throw ParseError("duplicate entry for column '" + inst.colNames[j] + "' in objective", line);
      inst.obj[j] = v;
      return;
    }
    if (freeRows.count(rowName)) return;
    auto it = rowIndex.find(rowName);
    if (it == rowIndex.end()) throw ParseError("unknown row '" + rowName + "'", line);
    if (!colRowsSeen[j].insert(it->second).second)
      throw ParseError("duplicate entry for column '" + inst.colNames[j] + "' in row '" + rowName + "'",
                       line);
    if (sgn(v) != 0) inst.rows[it->second].emplace_back(j, v);
  }
};

}  // namespace

Instance parseMpsText(const std::string& text, const std::string& name) {
  Reader rd;
  rd.inst.name = name;
  Section section = Section::None;
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw[0] == '*') continue;
    std::vector<std::string> tok = splitWs(raw);
    if (tok.empty()) continue;

    if (raw[0] != ' ' && raw[0] != '\t') {
      const std::string& head = tok[0];
      if (head == "NAME") {
        section = Section::Name;
        if (tok.size() > 1) rd.inst.name = tok[1];
      } else if (head == "OBJSENSE") {
        section = Section::ObjSense;
        if (tok.size() > 1) rd.inst.maximize = tok[1] == "MAX" || tok[1] == "MAXIMIZE";
      } else if (head == "ROWS") {
        section = Section::Rows;
        rd.sawRows = true;
      } else if (head == "COLUMNS") {
        if (!rd.sawRows) throw ParseError("COLUMNS before ROWS", lineNo);
        if (rd.rowCount == 0 && rd.objName.empty()) throw ParseError("empty ROWS section", lineNo);
        section = Section::Columns;
      } else if (head == "RHS") {
        section = Section::Rhs;
      } else if (head == "RANGES") {
        section = Section::Ranges;
      } else if (head == "BOUNDS") {
        section = Section::Bounds;
      } else if (head == "SOS") {
        throw ParseError("SOS records are not supported", lineNo);
      } else if (head == "ENDATA") {
        section = Section::End;
        break;
      } else if (section == Section::ObjSense && (head == "MAX" || head == "MAXIMIZE" ||
                                                   head == "MIN" || head == "MINIMIZE")) {
        rd.inst.maximize = head == "MAX" || head == "MAXIMIZE";
      } else {
        throw ParseError("unknown section '" + head + "'", lineNo);
      }
      continue;
    }

    switch (section) {
      case Section::ObjSense:
        rd.inst.maximize = tok[0] == "MAX" || tok[0] == "MAXIMIZE";
        break;
      case Section::Rows: {
        if (tok.size() != 2) throw ParseError("malformed ROWS record", lineNo);
        const std::string& type = tok[0];
        const std::string& rname = tok[1];
        if (type == "N") {
          if (rd.objName.empty())
            rd.objName = rname;
          else
            rd.freeRows.insert(rname);
          break;
        }
        RowSense s;
        if (type == "G")
          s = RowSense::GE;
        else if (type == "L")
          s = RowSense::LE;
        else if (type == "E")
          s = RowSense::EQ;
        else
          throw ParseError("unknown row type '" + type + "'", lineNo);
        if (rd.rowIndex.count(rname)) throw ParseError("duplicate row '" + rname + "'", lineNo);
        rd.rowIndex.emplace(rname, rd.inst.numRows());
        rd.inst.rowNames.push_back(rname);
        rd.inst.rows.emplace_back();
        rd.inst.sense.push_back(s);
        rd.inst.rhs.emplace_back(0);
        rd.inst.range.emplace_back(std::nullopt);
        ++rd.rowCount;
        break;
      }
      case Section::Columns: {
        if (tok.size() >= 3 && (tok[1] == "'MARKER'" || tok[1] == "MARKER")) {
          const std::string& kind = tok.back();
          if (kind == "'INTORG'")
            rd.inInteger = true;
          else if (kind == "'INTEND'")
            rd.inInteger = false;
          else
            throw ParseError("unknown marker " + kind, lineNo);
          break;
        }
        if (tok.size() != 3 && tok.size() != 5) {
          std::vector<std::string> f = splitFixed(raw);
          tok.clear();
          for (int k = 1; k < 6; ++k)
            if (!f[k].empty()) tok.push_back(f[k]);
          if (tok.size() != 3 && tok.size() != 5) throw ParseError("malformed COLUMNS record", lineNo);
        }
        const int j = rd.column(tok[0]);
        rd.addEntry(j, tok[1], tok[2], lineNo);
        if (tok.size() == 5) rd.addEntry(j, tok[3], tok[4], lineNo);
        break;
      }
      case Section::Rhs:
      case Section::Ranges: {
        // The set name is optional in free format.
        std::size_t first = tok.size() % 2 == 1 ? 1 : 0;
        if (tok.size() < 2 || tok.size() > 5) throw ParseError("malformed RHS/RANGES record", lineNo);
        for (std::size_t k = first; k + 1 < tok.size(); k += 2) {
          const std::string& rname = tok[k];
          const Rational v = number(tok[k + 1], lineNo);
          if (section == Section::Rhs && rname == rd.objName) {
            rd.inst.objConstant = -v;
            continue;
          }
          if (rd.freeRows.count(rname)) continue;
          auto it = rd.rowIndex.find(rname);
          if (it == rd.rowIndex.end()) throw ParseError("unknown row '" + rname + "'", lineNo);
          if (section == Section::Rhs)
            rd.inst.rhs[it->second] = v;
          else
            rd.inst.range[it->second] = v;
        }
        break;
      }
      case Section::Bounds: {
        if (tok.size() < 3 || tok.size() > 4) throw ParseError("malformed BOUNDS record", lineNo);
        const std::string& type = tok[0];
        const bool noValue = type == "FR" || type == "MI" || type == "PL" || type == "BV";
        std::string colName;
        std::string valueText;
        if (tok.size() == 4) {
          colName = tok[2];
          valueText = tok[3];
        } else if (noValue) {
          colName = tok[2];
        } else {
          colName = tok[1];
          valueText = tok[2];
        }
        auto it = rd.colIndex.find(colName);
        if (it == rd.colIndex.end()) throw ParseError("unknown column '" + colName + "'", lineNo);
        const int j = it->second;
        auto& lo = rd.inst.lower[j];
        auto& up = rd.inst.upper[j];
        if (type == "UP" || type == "UI") {
          const Rational v = number(valueText, lineNo);
          up = v;
          if (sgn(v) < 0 && lo && sgn(*lo) == 0) lo.reset();
          if (type == "UI") rd.inst.integer[j] = true;
        } else if (type == "LO" || type == "LI") {
          lo = number(valueText, lineNo);
          if (type == "LI") rd.inst.integer[j] = true;
        } else if (type == "FX") {
          const Rational v = number(valueText, lineNo);
          lo = v;
          up = v;
        } else if (type == "FR") {
          lo.reset();
          up.reset();
        } else if (type == "MI") {
          lo.reset();
        } else if (type == "PL") {
          up.reset();
        } else if (type == "BV") {
          lo = Rational(0);
          up = Rational(1);
          rd.inst.integer[j] = true;
        } else {
          throw ParseError("unsupported bound type '" + type + "'", lineNo);
        }
        break;
      }
      default:
        throw ParseError("record outside of any section", lineNo);
    }
  }
  if (!rd.sawRows) throw ParseError("missing ROWS section");
  if (rd.objName.empty() && rd.rowCount == 0) throw ParseError("empty ROWS section");
  if (section != Section::End) throw ParseError("missing ENDATA");
  for (auto& row : rd.inst.rows)
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (rd.inst.maximize) {
    for (auto& c : rd.inst.obj) c = -c;
    rd.inst.objConstant = -rd.inst.objConstant;
  }
  const int n = rd.inst.numCols();
  rd.inst.shift.assign(n, Rational(0));
  rd.inst.sign.assign(n, 1);
  return rd.inst;
}

Instance parseMps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  const auto slash = stem.find_last_of('/');
  if (slash != std::string::npos) stem = stem.substr(slash + 1);
  const auto dot = stem.find('.');
  if (dot != std::string::npos) stem = stem.substr(0, dot);
  Instance inst = parseMpsText(buf.str(), stem);
  // File stem wins so that instance names line up with the optima table.
  inst.name = stem;
  return inst;
}

}  // namespace gic
