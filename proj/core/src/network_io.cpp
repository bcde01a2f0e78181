#include "oscprof/network_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace oscprof {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& src, int line, const std::string& msg) {
  std::ostringstream os;
  os << src << ":" << line << ": " << msg;
  throw ParseError(os.str());
}

double parse_number(const std::string& src, int line, const std::string& field,
                    const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) fail(src, line, "field '" + field + "': empty value");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    fail(src, line, "field '" + field + "': invalid number '" + t + "'");
  return v;
}

struct BlockState {
  int start_line = 0;
  std::map<std::string, int> seen;  // field -> line where it was set
};

void require_field(const std::string& src, const BlockState& blk, int gene_index,
                   const char* field) {
  if (!blk.seen.count(field)) {
    std::ostringstream os;
    os << "gene " << gene_index << " ([gene] at line " << blk.start_line
       << "): missing field '" << field << "'";
    fail(src, blk.start_line, os.str());
  }
}

void finish_block(const std::string& src, const BlockState& blk, int gene_index) {
  for (const char* f : {"a", "b", "c", "beta", "nu", "regulation", "tau_r", "tau_p"})
    require_field(src, blk, gene_index, f);
}

}  // namespace

Network parse_network(std::istream& in, const std::string& source_name) {
  Network net;
  BlockState blk;
  bool in_block = false;
  std::string line;
  int lineno = 0;

  auto check_positive = [&](double v, const std::string& field, int at) {
    if (!(v > 0.0)) fail(source_name, at, "field '" + field + "': value must be > 0");
  };
  auto check_nonneg = [&](double v, const std::string& field, int at) {
    if (!(v >= 0.0)) fail(source_name, at, "field '" + field + "': value must be >= 0");
  };

  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;

    if (t.front() == '[') {
      if (t != "[gene]")
        fail(source_name, lineno, "unknown section '" + t + "', expected [gene]");
      if (in_block) finish_block(source_name, blk, net.size());
      net.stages.emplace_back();
      blk = BlockState{lineno, {}};
      in_block = true;
      continue;
    }

    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      fail(source_name, lineno, "expected 'key = value', got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!in_block)
      fail(source_name, lineno, "field '" + key + "' appears before any [gene] block");
    if (blk.seen.count(key)) {
      std::ostringstream os;
      os << "field '" << key << "': duplicate (first set at line " << blk.seen[key] << ")";
      fail(source_name, lineno, os.str());
    }

    GeneStage& g = net.stages.back();
    if (key == "a") {
      g.a = parse_number(source_name, lineno, key, value);
      check_positive(g.a, key, lineno);
    } else if (key == "b") {
      g.b = parse_number(source_name, lineno, key, value);
      check_positive(g.b, key, lineno);
    } else if (key == "c") {
      g.c = parse_number(source_name, lineno, key, value);
      check_positive(g.c, key, lineno);
    } else if (key == "beta") {
      g.beta = parse_number(source_name, lineno, key, value);
      check_nonneg(g.beta, key, lineno);
    } else if (key == "nu") {
      g.nu = parse_number(source_name, lineno, key, value);
      check_positive(g.nu, key, lineno);
    } else if (key == "tau_r") {
      g.tau_r = parse_number(source_name, lineno, key, value);
      check_nonneg(g.tau_r, key, lineno);
    } else if (key == "tau_p") {
      g.tau_p = parse_number(source_name, lineno, key, value);
      check_nonneg(g.tau_p, key, lineno);
    } else if (key == "history_r") {
      g.history_r = parse_number(source_name, lineno, key, value);
      check_nonneg(*g.history_r, key, lineno);
    } else if (key == "history_p") {
      g.history_p = parse_number(source_name, lineno, key, value);
      check_nonneg(*g.history_p, key, lineno);
    } else if (key == "regulation") {
      if (value == "repression") {
        g.regulation = Regulation::Repression;
      } else if (value == "activation") {
        g.regulation = Regulation::Activation;
      } else {
        fail(source_name, lineno,
             "field 'regulation': expected 'repression' or 'activation', got '" + value + "'");
      }
    } else {
      fail(source_name, lineno, "unknown field '" + key + "'");
    }
    blk.seen[key] = lineno;
  }

  if (!in_block) fail(source_name, lineno > 0 ? lineno : 1, "no [gene] block found");
  finish_block(source_name, blk, net.size());
  return net;
}

Network load_network(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(file.string() + ": cannot open file");
  return parse_network(in, file.filename().string());
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_network(const Network& net, std::ostream& out) {
  bool first = true;
  for (const auto& g : net.stages) {
    if (!first) out << "\n";
    first = false;
    out << "[gene]\n";
    out << "a = " << num(g.a) << "\n";
    out << "b = " << num(g.b) << "\n";
    out << "c = " << num(g.c) << "\n";
    out << "beta = " << num(g.beta) << "\n";
    out << "nu = " << num(g.nu) << "\n";
    out << "regulation = " << to_string(g.regulation) << "\n";
    out << "tau_r = " << num(g.tau_r) << "\n";
    out << "tau_p = " << num(g.tau_p) << "\n";
    if (g.history_r) out << "history_r = " << num(*g.history_r) << "\n";
    if (g.history_p) out << "history_p = " << num(*g.history_p) << "\n";
  }
}

void save_network(const Network& net, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw Error(file.string() + ": cannot open file for writing");
  write_network(net, out);
}

}  // namespace oscprof
