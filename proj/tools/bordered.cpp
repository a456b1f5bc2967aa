// Command-line front end for the bordered library.
//
// Exit codes: 0 when every check passes, 1 when a check fails (the first
// counterexample goes to standard error), 2 on usage errors, including
// malformed PMC files and literals.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bordered/bigmodel.hpp"
#include "bordered/fstructs.hpp"
#include "bordered/homotopy.hpp"
#include "bordered/identity_dd.hpp"
#include "bordered/koszul.hpp"
#include "bordered/perturbation.hpp"
#include "bordered/pmc.hpp"
#include "bordered/strands.hpp"

using namespace bordered;

namespace {

enum class Format { Canonical, Human };

struct RunConfig {
  std::string pmc_path;
  Format format = Format::Canonical;
  int jobs = 1;
};

// A usage problem detected after CLI11 has accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sorted lines in canonical mode; a title, indented lines and a count in
// human mode.
void emit(const RunConfig& cfg, const std::string& title, std::vector<std::string> lines, bool sort = true) {
  if (sort) std::sort(lines.begin(), lines.end());
  if (cfg.format == Format::Canonical) {
    for (const auto& l : lines) std::cout << l << '\n';
    return;
  }
  std::cout << title << '\n';
  for (const auto& l : lines) std::cout << "  " << l << '\n';
  std::cout << "(" << lines.size() << (lines.size() == 1 ? " line)" : " lines)") << '\n';
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) out.push_back(l);
  return out;
}

int report(const CheckResult& r, const std::string& what) {
  if (!r.ok) {
    std::cerr << what << " FAILED: " << r.message << '\n';
    return 1;
  }
  std::cout << what << " ok (" << r.checked << " checked)\n";
  return 0;
}

std::string mult_text(const Multiplicity& m) {
  std::string out;
  for (std::size_t k = 0; k < m.size(); ++k) out += (k ? "," : "") + std::to_string(m[k]);
  return out;
}

int basis_index(const StrandsAlgebra& alg, const std::string& text) {
  int idx = alg.find(parse_diagram(alg.pmc(), text));
  if (idx < 0) throw UsageError("not a basis diagram: " + text);
  return idx;
}

Idempotent parse_idempotent(const StrandsAlgebra& alg, const std::string& text) {
  int idx = basis_index(alg, text);
  if (!alg.is_idempotent(idx)) throw UsageError("--idem expects an idempotent, got " + text);
  return alg.left(idx);
}

// Elements of an input list are separated by ';'.  Without any ';' the list
// is split at commas, and a horizontal token `h<p>` stays with the strand
// before it, so `2-3,1-2` and `1-2,h5,2-3` both read as two inputs.
std::vector<int> parse_inputs(const StrandsAlgebra& alg, const std::vector<std::string>& args) {
  std::vector<int> out;
  for (const auto& arg : args) {
    std::vector<std::string> items;
    if (arg.find(';') != std::string::npos) {
      std::stringstream ss(arg);
      for (std::string t; std::getline(ss, t, ';');) items.push_back(t);
    } else {
      std::stringstream ss(arg);
      for (std::string t; std::getline(ss, t, ',');) {
        auto p = t.find_first_not_of(' ');
        bool horizontal = p != std::string::npos && t[p] == 'h';
        if (horizontal && !items.empty())
          items.back() += "," + t;
        else
          items.push_back(t);
      }
    }
    for (const auto& t : items) {
      int idx = basis_index(alg, t);
      if (alg.is_idempotent(idx)) throw UsageError("inputs must be non-idempotent: " + t);
      out.push_back(idx);
    }
  }
  return out;
}

// ---- commands

int cmd_algebra(const RunConfig& cfg, const std::string& action) {
  StrandsAlgebra alg(Pmc::load(cfg.pmc_path));
  if (action == "check") return report(check_dg_algebra(alg, cfg.jobs), "dg algebra");
  std::vector<std::string> lines;
  for (int a = 0; a < alg.size(); ++a) {
    lines.push_back("basis " + alg.str(a) + " ; mult " + mult_text(alg.mult(a)));
    for (int b : alg.diff(a)) lines.push_back("d " + alg.str(a) + " -> " + alg.str(b));
  }
  emit(cfg, "A(Z) with " + std::to_string(alg.size()) + " basis elements", lines);
  return 0;
}

int cmd_dd(const RunConfig& cfg, const std::string& action) {
  StrandsAlgebra alg(Pmc::load(cfg.pmc_path));
  auto dd = build_identity_dd(alg);
  if (action == "dump") {
    emit(cfg, "CFDD(I_Z): " + std::to_string(dd.generators.size()) + " generators", split_lines(dump(alg, dd)));
    return 0;
  }
  if (int rc = report(check_dd_structure(alg, dd), "DD structure equation")) return rc;
  const int g = alg.pmc().genus();
  int k = 0;
  try {
    k = check_bounded(alg, dd);
  } catch (const std::logic_error& e) {
    std::cerr << "boundedness FAILED: " << e.what() << '\n';
    return 1;
  }
  std::cout << "bounded ok (max_k " << k << ", limit " << 2 * g * (4 * g - 1) << ")\n";
  return 0;
}

int cmd_bigmodel(const RunConfig& cfg, const std::string& action) {
  StrandsAlgebra alg(Pmc::load(cfg.pmc_path));
  BigModel m(alg);
  if (action == "dump") {
    emit(cfg, "M: " + std::to_string(m.size()) + " generators", split_lines(m.dump()));
    return 0;
  }
  if (int rc = report(m.check_d_squared(cfg.jobs), "d^2 = 0 on M")) return rc;
  return report(m.check_arrows(cfg.jobs), "M arrows");
}

int cmd_homotopy(const RunConfig& cfg, bool dump_pairs, const std::vector<std::string>& without) {
  StrandsAlgebra alg(Pmc::load(cfg.pmc_path));
  BigModel m(alg);
  HomotopyOptions opt;
  for (const auto& w : without) {
    if (w == "case2") opt.case2_special = false;
    else if (w == "case4a") opt.case4_first_special = false;
    else if (w == "case4b") opt.case4_second_special = false;
  }
  if (dump_pairs) {
    auto p = pairing(m, cfg.jobs);
    std::vector<std::string> lines;
    for (const auto& [x, y] : p.pairs) lines.push_back("pair " + to_string(alg, x) + " <-> " + to_string(alg, y));
    emit(cfg, "d/H pairing: " + std::to_string(p.pairs.size()) + " pairs", lines);
    if (int rc = report(p.check, "pairing")) return rc;
  }
  return report(verify_homotopy(m, opt, cfg.jobs), "dH + Hd = I + fg");
}

int cmd_cfaa_eval(const RunConfig& cfg, const std::string& idem, const std::vector<std::string>& left,
                  const std::vector<std::string>& right, bool tail_first, bool trace) {
  StrandsAlgebra alg(Pmc::load(cfg.pmc_path));
  const Idempotent i = parse_idempotent(alg, idem);
  const auto l = parse_inputs(alg, left);
  const auto r = parse_inputs(alg, right);
  if (l.empty() && r.empty()) throw UsageError("give at least one of --left, --right");
  PerturbationOptions opt;
  if (tail_first) opt.order = InputOrder::TailFirst;
  if (trace) {
    std::vector<std::string> seqs;
    for_each_sequence(alg, i, l, r, opt, [&](const ActionSequence& s) { seqs.push_back(to_string(alg, s)); });
    emit(cfg, "sequences", seqs);
  }
  std::vector<std::string> out;
  for (Idempotent j : evaluate_action(alg, i, l, r, opt)) out.push_back(idempotent_label(alg.pmc(), j));
  if (out.empty()) out.push_back("0");
  emit(cfg, "m(" + idem + "; ...) =", out);
  return 0;
}

int cmd_cfaa_enum(const RunConfig& cfg, int max_mult, long max_arrows, bool check) {
  StrandsAlgebra alg(Pmc::load(cfg.pmc_path));
  auto t = enumerate_actions(alg, max_mult, cfg.jobs, max_arrows);
  emit(cfg, "N actions up to multiplicity " + std::to_string(max_mult), split_lines(dump(alg, t)));
  if (t.truncated) std::cerr << "warning: output truncated at " << max_arrows << " arrows\n";
  if (check) return report(check_aa_structure(alg, n_evaluator(alg), max_mult), "AA structure equation");
  return 0;
}

int cmd_phi_extract(const RunConfig& cfg, bool reversed) {
  StrandsAlgebra alg(Pmc::load(cfg.pmc_path));
  auto da = box_aa_dd(alg, n_evaluator(alg), build_identity_dd(alg),
                      reversed ? BoxConvention::Reversed : BoxConvention::Forward);
  for (Idempotent i : da.generators)
    if (!da.delta(i, {}).empty()) {
      std::cerr << "delta^1_1 FAILED: nonzero at " << idempotent_label(alg.pmc(), i) << '\n';
      return 1;
    }
  auto phi = extract_morphism(alg, da);
  std::vector<std::string> lines;
  for (int a = 0; a < alg.size(); ++a) {
    if (alg.is_idempotent(a)) continue;
    AlgebraElement img;
    for (int b : phi({a})) img.terms.push_back(alg.diagram(b));
    img.normalize();
    lines.push_back("phi1 " + alg.str(a) + " -> " + to_string(alg.pmc(), img));
  }
  emit(cfg, "phi_1 of N box CFDD(I_Z)", lines);
  HomologyBasis hb(alg);
  return report(check_homology_isomorphism(alg, hb, phi), "phi_1 homology isomorphism");
}

int cmd_cobar_phi1(const RunConfig& cfg, const std::vector<std::string>& diagrams, bool sequences) {
  StrandsAlgebra alg(Pmc::load(cfg.pmc_path));
  std::vector<std::string> lines;
  for (const auto& text : diagrams) {
    int a = basis_index(alg, text);
    if (alg.is_idempotent(a)) throw UsageError("phi_1 is defined here on non-idempotent elements: " + text);
    lines.push_back("phi1(" + alg.str(a) + ") = " + to_string(alg, phi1(alg, a)));
    if (sequences)
      for (const auto& s : phi1_sequences(alg, a)) lines.push_back("  seq " + to_string(alg, s));
  }
  emit(cfg, "phi_1 into Cob(A)", lines, false);
  return 0;
}

// One cobar sum per non-blank line; a leading '+' is allowed so long sums can
// be wrapped, and lines starting with '#' are skipped.  The element is the
// total.
CobarElement read_cobar_file(const StrandsAlgebra& alg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path, 0, 0);
  CobarElement x;
  int line_no = 0;
  for (std::string line; std::getline(f, line);) {
    ++line_no;
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    if (line.back() == '\r') line.pop_back();
    if (line[p] == '+') line[p] = ' ';
    try {
      auto part = parse_cobar(alg, line);
      x.insert(x.end(), part.begin(), part.end());
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), line_no, e.column());
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no, 0);
    }
  }
  normalize(x);
  return x;
}

int cmd_cobar_isboundary(const RunConfig& cfg, const std::string& file) {
  StrandsAlgebra alg(Pmc::load(cfg.pmc_path));
  auto x = read_cobar_file(alg, file);
  auto cert = is_boundary(alg, x);
  std::vector<std::string> lines{"element " + to_string(alg, x),
                                 "piece " + std::to_string(cert.piece_dim) + " rank_d " +
                                     std::to_string(cert.rank_d) + " rank_with_x " +
                                     std::to_string(cert.rank_with_x)};
  if (!cert.boundary) {
    emit(cfg, "cobar boundary test", lines, false);
    std::cerr << "not a boundary: " << to_string(alg, x) << '\n';
    return 1;
  }
  lines.push_back("boundary of " + to_string(alg, cert.primitive));
  emit(cfg, "cobar boundary test", lines, false);
  return 0;
}

int cmd_homology(const RunConfig& cfg) {
  StrandsAlgebra alg(Pmc::load(cfg.pmc_path));
  HomologyBasis hb(alg);
  const Pmc& z = alg.pmc();
  std::vector<std::string> lines;
  for (const auto& b : hb.blocks()) {
    if (b.representatives.empty()) continue;
    const int a = b.members.front();
    std::string l = "block " + idempotent_label(z, alg.left(a)) + " " + idempotent_label(z, alg.right(a)) +
                    " mult " + mult_text(alg.mult(a)) + " rank " + std::to_string(b.representatives.size()) +
                    " :";
    for (const auto& r : b.representatives) l += " [" + to_string(z, r) + "]";
    lines.push_back(l);
  }
  emit(cfg, "H_*(A(Z)): total rank " + std::to_string(hb.total_rank()) + " in " +
                std::to_string(hb.blocks().size()) + " blocks",
       lines);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bordered Floer strands algebra toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "canonical";
  app.add_option("--format", format, "canonical (sorted, diffable) or human")
      ->check(CLI::IsMember({"canonical", "human"}));
  app.add_option("--jobs", cfg.jobs, "worker threads (0: one per hardware thread)")->check(CLI::NonNegativeNumber);

  auto add_pmc = [&](CLI::App* sub) { sub->add_option("pmc", cfg.pmc_path, "PMC file")->required(); };
  auto add_action = [&](CLI::App* sub, std::string& action) {
    sub->add_option("action", action, "check or dump")->required()->check(CLI::IsMember({"check", "dump"}));
  };

  std::string alg_action, dd_action, big_action;
  auto* algebra = app.add_subcommand("algebra", "strands algebra A(Z): check or dump");
  add_action(algebra, alg_action);
  add_pmc(algebra);
  auto* dd = app.add_subcommand("dd", "identity type DD bimodule: check or dump");
  add_action(dd, dd_action);
  add_pmc(dd);
  auto* big = app.add_subcommand("bigmodel", "the model M: check or dump");
  add_action(big, big_action);
  add_pmc(big);

  bool dump_pairs = false;
  std::vector<std::string> without;
  auto* homotopy = app.add_subcommand("homotopy-check", "verify dH + Hd = I + fg on M");
  add_pmc(homotopy);
  homotopy->add_flag("--dump-pairs", dump_pairs, "print the d/H pairing of generators");
  homotopy->add_option("--without", without, "disable a special H family (negative control)")
      ->check(CLI::IsMember({"case2", "case4a", "case4b"}));

  auto* cfaa = app.add_subcommand("cfaa", "the AA bimodule N");
  cfaa->require_subcommand(1);
  std::string idem;
  std::vector<std::string> left, right;
  bool tail_first = false, trace = false;
  auto* eval = cfaa->add_subcommand("eval", "one action m(idem; left; right)");
  add_pmc(eval);
  eval->add_option("--idem", idem, "generator, e.g. h2")->required();
  eval->add_option("--left", left, "left inputs, e.g. 1-3 (';' or ',' separated)");
  eval->add_option("--right", right, "right inputs, e.g. 2-3,1-2");
  eval->add_flag("--tail-first", tail_first, "consume inputs from the end (negative control)");
  eval->add_flag("--trace", trace, "print every contributing sequence");
  int max_mult = 6;
  long max_arrows = 0;
  bool enum_check = false;
  auto* enumerate = cfaa->add_subcommand("enum", "every action up to a multiplicity bound");
  add_pmc(enumerate);
  enumerate->add_option("--max-mult", max_mult, "bound on total multiplicity")->check(CLI::NonNegativeNumber);
  enumerate->add_option("--max-arrows", max_arrows, "stop after this many arrows (0: no limit)")
      ->check(CLI::NonNegativeNumber);
  enumerate->add_flag("--check", enum_check, "also verify the AA structure equation at the bound");

  bool reversed = false;
  auto* phi = app.add_subcommand("phi", "the morphism phi from N box CFDD(I_Z)");
  phi->require_subcommand(1);
  auto* extract = phi->add_subcommand("extract", "print phi_1 and check it is a quasi-isomorphism");
  add_pmc(extract);
  extract->add_flag("--reversed", reversed, "use the reversed box convention (negative control)");

  auto* cobar = app.add_subcommand("cobar", "the cobar resolution Cob(A)");
  cobar->require_subcommand(1);
  std::vector<std::string> diagrams;
  bool sequences = false;
  auto* cphi = cobar->add_subcommand("phi1", "phi_1(a) in Cob(A)");
  add_pmc(cphi);
  cphi->add_option("diagram", diagrams, "basis diagrams, e.g. '1-2,h3'")->required();
  cphi->add_flag("--sequences", sequences, "print the contributing sequences");
  std::string element_file;
  auto* isb = cobar->add_subcommand("isboundary", "decide whether a cobar element is a boundary");
  add_pmc(isb);
  isb->add_option("element", element_file, "file with one cobar sum per line")->required();

  auto* homology = app.add_subcommand("homology", "homology blocks of A(Z)");
  add_pmc(homology);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.format = format == "human" ? Format::Human : Format::Canonical;

  try {
    if (*algebra) return cmd_algebra(cfg, alg_action);
    if (*dd) return cmd_dd(cfg, dd_action);
    if (*big) return cmd_bigmodel(cfg, big_action);
    if (*homotopy) return cmd_homotopy(cfg, dump_pairs, without);
    if (*eval) return cmd_cfaa_eval(cfg, idem, left, right, tail_first, trace);
    if (*enumerate) return cmd_cfaa_enum(cfg, max_mult, max_arrows, enum_check);
    if (*extract) return cmd_phi_extract(cfg, reversed);
    if (*cphi) return cmd_cobar_phi1(cfg, diagrams, sequences);
    if (*isb) return cmd_cobar_isboundary(cfg, element_file);
    if (*homology) return cmd_homology(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidPmc& e) {
    std::cerr << "error: invalid PMC: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
