#pragma once

// Line-based text formats, exact rationals as a/b throughout.
//
// Tree file:
//   dim <d>
//   branch <name> deg <n> exps <qvec> <qvec> ...
//   contact <name> <name> <qvec>
// Type file:
//   dim <d>
//   branches <s>
//   column <qvec-per-branch ...> mult <c>
// Session file: a tree file that may also carry
//   equation <branch-name> = <polynomial>
//   polar-factor <polynomial>
// QVec syntax: (a/b,c/d), a bare rational when d = 1, or inf.

#include <qopolar/bunch_type.hpp>
#include <qopolar/eggers_wall.hpp>
#include <qopolar/error.hpp>
#include <qopolar/poly_text.hpp>
#include <qopolar/qvec.hpp>
#include <qopolar/sparse_poly.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace qopolar {

inline QVec parse_qvec(const std::string& text, std::size_t d) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "inf" || s == "+inf") return QVec::infinity(d);
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') fail(errc::parse_error, "qvec: missing ')' in '" + text + "'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<Rat> coords;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      coords.push_back(parse_rat(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (cur.empty()) fail(errc::parse_error, "qvec: empty coordinate in '" + text + "'");
  coords.push_back(parse_rat(cur));
  if (coords.size() != d)
    fail(errc::parse_error, "qvec: expected " + std::to_string(d) + " coordinates in '" + text +
                                "', got " + std::to_string(coords.size()));
  return QVec(std::move(coords));
}

struct SessionData {
  std::size_t d = 0;
  std::vector<BranchData> branches;
  std::vector<std::vector<QVec>> contact;
  std::map<std::string, SparsePoly> equations;   // by branch name
  std::vector<SparsePoly> polar_factors;

  EggersWallTree build_tree() const {
    return EggersWallTree(branches, contact, Lattice::standard(d));
  }
  // equations aligned with the branch order; all must be present
  std::vector<SparsePoly> aligned_equations() const {
    std::vector<SparsePoly> out;
    for (const auto& b : branches) {
      auto it = equations.find(b.name);
      if (it == equations.end())
        fail(errc::parse_error, "session: no equation for branch " + b.name);
      out.push_back(it->second);
    }
    return out;
  }
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

inline SessionData parse_session_text(const std::string& text) {
  SessionData s;
  std::map<std::string, std::size_t> branch_index;
  std::vector<std::tuple<std::string, std::string, std::string>> contacts;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_dim = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    auto err = [&](const std::string& msg) {
      fail(errc::parse_error, "line " + std::to_string(lineno) + ": " + msg);
    };
    if (toks[0] == "dim") {
      if (toks.size() != 2) err("usage: dim <d>");
      s.d = static_cast<std::size_t>(std::stoul(toks[1]));
      if (s.d < 1) err("dimension must be >= 1");
      have_dim = true;
    } else if (toks[0] == "branch") {
      if (!have_dim) err("dim must come first");
      if (toks.size() < 4 || toks[2] != "deg") err("usage: branch <name> deg <n> [exps ...]");
      BranchData b;
      b.name = toks[1];
      if (branch_index.count(b.name)) err("duplicate branch name " + b.name);
      b.degree = Int(toks[3]);
      std::size_t at = 4;
      if (at < toks.size()) {
        if (toks[at] != "exps") err("expected 'exps', got '" + toks[at] + "'");
        for (++at; at < toks.size(); ++at) b.exponents.push_back(parse_qvec(toks[at], s.d));
      }
      branch_index[b.name] = s.branches.size();
      s.branches.push_back(std::move(b));
    } else if (toks[0] == "contact") {
      if (toks.size() != 4) err("usage: contact <a> <b> <qvec>");
      contacts.emplace_back(toks[1], toks[2], toks[3]);
    } else if (toks[0] == "equation") {
      if (toks.size() < 4 || toks[3].empty() || toks[2] != "=")
        err("usage: equation <branch> = <polynomial>");
      auto eq = line.find('=');
      std::string poly = line.substr(eq + 1);
      if (!branch_index.count(toks[1])) err("equation for unknown branch " + toks[1]);
      s.equations.emplace(toks[1], parse_polynomial(poly, s.d));
    } else if (toks[0] == "polar-factor") {
      auto pos = line.find("polar-factor");
      s.polar_factors.push_back(parse_polynomial(line.substr(pos + 12), s.d));
    } else {
      err("unknown directive '" + toks[0] + "'");
    }
  }
  if (!have_dim) fail(errc::parse_error, "missing 'dim' line");
  std::size_t n = s.branches.size();
  if (n == 0) fail(errc::parse_error, "no branches");
  s.contact.assign(n, std::vector<QVec>(n, QVec::infinity(s.d)));
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (auto& [a, b, v] : contacts) {
    if (!branch_index.count(a) || !branch_index.count(b))
      fail(errc::parse_error, "contact references unknown branch " + a + " or " + b);
    std::size_t i = branch_index[a], j = branch_index[b];
    if (i == j) fail(errc::parse_error, "contact of a branch with itself is implicit (+inf)");
    QVec k = parse_qvec(v, s.d);
    if (seen[i][j] && s.contact[i][j] != k)
      fail(errc::parse_error, "conflicting contact values for " + a + "," + b);
    s.contact[i][j] = s.contact[j][i] = k;
    seen[i][j] = seen[j][i] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!seen[i][j])
        fail(errc::parse_error, "missing contact between " + s.branches[i].name + " and " +
                                    s.branches[j].name);
  return s;
}

inline EggersWallTree parse_tree(const std::string& text) {
  return parse_session_text(text).build_tree();
}

inline std::string tree_to_text(const EggersWallTree& tree) {
  std::string out = "dim " + std::to_string(tree.xdim()) + "\n";
  for (std::size_t i = 0; i < tree.branch_count(); ++i) {
    const auto& b = tree.branch(i);
    out += "branch " + b.name + " deg " + b.degree.get_str();
    if (!b.exponents.empty()) {
      out += " exps";
      for (const auto& e : b.exponents) out += " " + e.str();
    }
    out += "\n";
  }
  for (std::size_t i = 0; i < tree.branch_count(); ++i)
    for (std::size_t j = i + 1; j < tree.branch_count(); ++j)
      out += "contact " + tree.branch(i).name + " " + tree.branch(j).name + " " +
             tree.contact(i, j).str() + "\n";
  return out;
}

inline BunchType parse_type_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::size_t d = 0, s = 0;
  bool have_dim = false, have_rows = false;
  std::optional<BunchType> type;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    auto err = [&](const std::string& msg) {
      fail(errc::parse_error, "line " + std::to_string(lineno) + ": " + msg);
    };
    if (toks[0] == "dim") {
      if (toks.size() != 2) err("usage: dim <d>");
      d = static_cast<std::size_t>(std::stoul(toks[1]));
      have_dim = true;
    } else if (toks[0] == "branches") {
      if (toks.size() != 2) err("usage: branches <s>");
      s = static_cast<std::size_t>(std::stoul(toks[1]));
      have_rows = true;
    } else if (toks[0] == "column") {
      if (!have_dim || !have_rows) err("dim and branches must precede columns");
      if (!type) type.emplace(s, d);
      if (toks.size() != s + 3 || toks[s + 1] != "mult")
        err("usage: column <qvec x branches> mult <c>");
      BunchColumn col;
      for (std::size_t i = 0; i < s; ++i) col.values.push_back(parse_qvec(toks[1 + i], d));
      col.multiplicity = Int(toks[s + 2]);
      type->add_column(std::move(col));
    } else {
      err("unknown directive '" + toks[0] + "'");
    }
  }
  if (!have_dim || !have_rows) fail(errc::parse_error, "missing dim or branches line");
  if (!type) type.emplace(s, d);
  return *type;
}

inline std::string type_to_text(const BunchType& type) {
  std::string out = "dim " + std::to_string(type.xdim()) + "\n";
  out += "branches " + std::to_string(type.rows()) + "\n";
  for (const auto& col : type.columns()) {
    out += "column";
    for (const auto& v : col.values) out += " " + v.str();
    out += " mult " + col.multiplicity.get_str() + "\n";
  }
  return out;
}

// paper-layout view: one row per branch, multiplicities at the bottom
inline std::string type_matrix_view(const BunchType& type, const std::vector<std::string>& names) {
  std::vector<std::vector<std::string>> cells(type.rows() + 1);
  for (std::size_t r = 0; r < type.rows(); ++r)
    for (const auto& col : type.columns()) cells[r].push_back(col.values[r].str());
  for (const auto& col : type.columns())
    cells[type.rows()].push_back(col.multiplicity.get_str());
  std::vector<std::size_t> width(type.columns().size(), 0);
  for (const auto& row : cells)
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  std::size_t name_w = 0;
  for (const auto& n : names) name_w = std::max(name_w, n.size());
  std::string out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    std::string name = r < names.size() ? names[r] : "";
    out += name + std::string(name_w - name.size(), ' ') + " |";
    for (std::size_t j = 0; j < cells[r].size(); ++j)
      out += " " + cells[r][j] + std::string(width[j] - cells[r][j].size(), ' ');
    out += " |\n";
  }
  return out;
}

}  // namespace qopolar
