// Command-line front end: verify / build / classify / search / census /
// corpus verify-all.
//
// Exit codes: 0 success (valid family, solutions found, checks passed),
// 1 negative outcome or bad input file, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsdf/family.hpp"
#include "gsdf/family_io.hpp"
#include "gsdf/gs_matrix.hpp"
#include "gsdf/prime_chains.hpp"
#include "gsdf/residue_set.hpp"
#include "gsdf/search.hpp"

namespace {

std::string list_str(const std::vector<int>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out + "]";
}

std::string set_str(const gsdf::ResidueSet& x) { return list_str(x.members()); }

std::string yesno(bool b) { return b ? "yes" : "no"; }

void print_structure_report(const gsdf::StructureReport& rep) {
  std::string classes;
  const auto names = rep.named_classes();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) classes += ",";
    classes += names[i];
  }
  std::cout << "mu=" << rep.mu << " order=" << rep.mu_order
            << " kind=" << gsdf::to_string(rep.kind)
            << " fixes_x0=" << yesno(rep.fixes_x0)
            << " symbol=" << rep.symmetry_symbol << " classes=[" << classes
            << "]\n";
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const int value = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, "'" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw CLI::ValidationError(what, "empty list");
  return out;
}

int cmd_verify(const std::string& file, bool with_matrix) {
  gsdf::RealizedFamily rf = gsdf::load_family(file);
  const gsdf::DifferenceFamily& fam = rf.family;
  const gsdf::VerifyResult vr = gsdf::verify(fam);
  const auto sizes = fam.block_sizes();
  std::cout << "v=" << fam.v() << " k=["
            << sizes[0] << "," << sizes[1] << "," << sizes[2] << "," << sizes[3]
            << "]\n";
  std::cout << "valid: " << yesno(vr.valid) << "\n";
  int rc = vr.valid ? 0 : 1;
  if (vr.valid) {
    const gsdf::ParameterSet& ps = *vr.parameters;
    const gsdf::ParameterReport rep = gsdf::check_parameters(ps);
    std::cout << "lambda=" << ps.lambda << " weight=" << ps.weight() << "\n";
    std::cout << "gs-type: " << yesno(rep.gs_type)
              << "  special: " << yesno(rep.special) << "\n";
  }
  if (with_matrix) {
    const gsdf::PMMatrix m = gsdf::assemble_gs(fam);
    const bool had = gsdf::is_hadamard(m);
    std::cout << "matrix: order=" << m.order() << " orthogonal-rows=" << yesno(had)
              << " skew-type=" << yesno(gsdf::is_skew_type(m)) << "\n";
    if (!had) rc = 1;
  }
  return rc;
}

int cmd_build(const std::string& file, const std::string& out_path) {
  gsdf::RealizedFamily rf = gsdf::load_family(file);
  const gsdf::VerifyResult vr = gsdf::verify(rf.family);
  if (!vr.valid) {
    std::cerr << "error: family does not verify; refusing to build\n";
    return 1;
  }
  if (vr.parameters->weight() != rf.family.v()) {
    std::cerr << "error: weight " << vr.parameters->weight() << " differs from v="
              << rf.family.v() << "; the block template needs weight v\n";
    return 1;
  }
  const gsdf::PMMatrix m = gsdf::assemble_gs(rf.family);
  if (!gsdf::is_hadamard(m)) {
    std::cerr << "error: assembled matrix failed the orthogonality check\n";
    return 1;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  gsdf::write_matrix(m, out);
  std::cout << "wrote order-" << m.order() << " matrix"
            << (gsdf::is_skew_type(m) ? " (skew-type)" : "") << " to " << out_path
            << "\n";
  return 0;
}

int cmd_classify(const std::string& file, std::optional<int> mu_opt, bool all) {
  gsdf::RealizedFamily rf = gsdf::load_family(file);
  if (all) {
    const auto reports = gsdf::find_multipliers(rf.family);
    for (const auto& rep : reports) print_structure_report(rep);
    std::cout << "multipliers=" << reports.size() << "\n";
    return reports.empty() ? 1 : 0;
  }
  long long mu;
  if (mu_opt) {
    mu = *mu_opt;
  } else if (rf.record.mu) {
    mu = *rf.record.mu;
  } else {
    std::cerr << "error: record has no multiplier; pass --mu or --all\n";
    return 2;
  }
  const gsdf::StructureReport rep = gsdf::classify(rf.family, mu);
  print_structure_report(rep);
  return rep.kind == gsdf::StructureKind::none ? 1 : 0;
}

int cmd_search(const gsdf::SearchProblem& prob) {
  const gsdf::SearchOutcome out = gsdf::search(prob);
  for (const auto& sol : out.solutions) {
    std::cout << "mu=" << sol.mu << " X0=" << set_str(sol.family[0])
              << " X1=" << set_str(sol.family[1])
              << " X2=" << set_str(sol.family[2])
              << " X3=" << set_str(sol.family[3]) << "\n";
  }
  std::cout << "solutions=" << out.solutions.size()
            << " exhausted=" << yesno(out.exhausted)
            << " nodes=" << out.nodes_explored
            << " multipliers=" << list_str(out.multipliers_scanned) << "\n";
  return out.solutions.empty() ? 1 : 0;
}

int cmd_census(int emax) {
  std::cout << gsdf::census_tsv(gsdf::census(emax));
  return 0;
}

int cmd_corpus_verify_all(const std::string& data_dir, int vmax) {
  const gsdf::CorpusReport report = gsdf::run_corpus(data_dir, vmax, &std::cout);
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Four-block difference families over Z_v and their matrices"};
  app.require_subcommand(1);
  int rc = 0;

  // verify
  std::string verify_file;
  bool verify_matrix = false;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check the covering property of a family file");
  verify_cmd->add_option("file", verify_file, "family record (JSON)")->required();
  verify_cmd->add_flag("--matrix", verify_matrix,
                       "also assemble the matrix and check it");
  verify_cmd->callback([&]() { rc = cmd_verify(verify_file, verify_matrix); });

  // build
  std::string build_file, build_out;
  auto* build_cmd =
      app.add_subcommand("build", "Assemble the order-4v matrix from a family file");
  build_cmd->add_option("file", build_file, "family record (JSON)")->required();
  build_cmd->add_option("-o,--output", build_out, "output file for the matrix text")
      ->required();
  build_cmd->callback([&]() { rc = cmd_build(build_file, build_out); });

  // classify
  std::string classify_file;
  int classify_mu = 0;
  bool classify_all = false;
  auto* classify_cmd = app.add_subcommand(
      "classify", "Report how a multiplier acts on the last three blocks");
  classify_cmd->add_option("file", classify_file, "family record (JSON)")->required();
  auto* mu_opt =
      classify_cmd->add_option("--mu", classify_mu, "multiplier to test");
  classify_cmd->add_flag("--all", classify_all,
                         "scan every unit multiplier in 2..v-1");
  classify_cmd->callback([&]() {
    rc = cmd_classify(classify_file,
                      mu_opt->count() ? std::optional<int>(classify_mu)
                                      : std::nullopt,
                      classify_all);
  });

  // search
  int search_v = 0;
  std::string search_k, search_structure, search_symmetry, search_group;
  long long search_lambda = 0;
  int search_mu = 0;
  std::size_t search_limit = 0;
  unsigned search_threads = 1;
  std::uint64_t search_budget = 0;
  auto* search_cmd =
      app.add_subcommand("search", "Search for families with a multiplier action");
  search_cmd->add_option("--v", search_v, "modulus (odd)")->required();
  search_cmd->add_option("--k", search_k, "block sizes K0,K,K,K")->required();
  search_cmd->add_option("--lambda", search_lambda, "covering number")->required();
  search_cmd
      ->add_option("--structure", search_structure, "spin or slide")
      ->required()
      ->check(CLI::IsMember({"spin", "slide"}));
  auto* search_mu_opt =
      search_cmd->add_option("--mu", search_mu, "search only this multiplier");
  search_cmd->add_option("--group", search_group,
                         "g1,g2,...: blocks must be unions of orbits of this "
                         "unit subgroup");
  search_cmd->add_option("--symmetry", search_symmetry,
                         "two or four of 's','k','*' for X0,X1[,X2,X3]");
  search_cmd->add_option("--limit", search_limit, "stop after this many solutions");
  search_cmd->add_option("--threads", search_threads, "worker threads");
  search_cmd->add_option("--node-budget", search_budget,
                         "abort after this many search nodes");
  search_cmd->callback([&]() {
    const std::vector<int> k = parse_int_list(search_k, "--k");
    if (k.size() != 4)
      throw CLI::ValidationError("--k", "expected four sizes K0,K,K,K");
    if (!(k[1] == k[2] && k[2] == k[3]))
      throw CLI::ValidationError("--k", "the last three sizes must be equal");
    gsdf::SearchProblem prob;
    prob.v = search_v;
    prob.k = {k[0], k[1], k[2], k[3]};
    prob.lambda = search_lambda;
    prob.structure = search_structure == "spin" ? gsdf::TargetStructure::spin
                                                : gsdf::TargetStructure::slide;
    if (search_mu_opt->count()) prob.mu = search_mu;
    if (!search_group.empty())
      prob.group = parse_int_list(search_group, "--group");
    prob.symmetry = search_symmetry;
    prob.limit = search_limit;
    prob.threads = search_threads;
    prob.node_budget = search_budget;
    try {
      rc = cmd_search(prob);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("search", e.what());
    }
  });

  // census
  int census_emax = 6;
  auto* census_cmd = app.add_subcommand(
      "census", "Tabulate chain heads among primes up to 10^e thresholds");
  census_cmd->add_option("--emax", census_emax, "largest exponent (1..8)")
      ->check(CLI::Range(1, 8));
  census_cmd->callback([&]() { rc = cmd_census(census_emax); });

  // corpus verify-all
  auto* corpus_cmd = app.add_subcommand("corpus", "Operations on the bundled corpus");
  corpus_cmd->require_subcommand(1);
  std::string corpus_data = GSDF_DATA_DIR;
  int corpus_vmax = 631;
  auto* corpus_verify_cmd =
      corpus_cmd->add_subcommand("verify-all", "Re-check every corpus record");
  corpus_verify_cmd->add_option("--data", corpus_data, "data directory");
  corpus_verify_cmd->add_option("--hadamard-vmax", corpus_vmax,
                                "assemble and check matrices for v up to this");
  corpus_verify_cmd->callback(
      [&]() { rc = cmd_corpus_verify_all(corpus_data, corpus_vmax); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
