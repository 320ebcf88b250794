#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grasslab/classify.hpp"
#include "grasslab/oracle.hpp"
#include "grasslab/parse.hpp"

namespace {

using namespace grasslab;

struct Session {
  int n = 3;
  std::string field_text = "Q";
  std::uint64_t seed = kDefaultSeed;
  int trials = kDefaultWitnessTrials;

  Field field() const { return parse_field(field_text); }
};

void add_common(CLI::App* sub, Session& s, bool with_seed) {
  sub->add_option("-n,--generators", s.n, "number of generators")
      ->capture_default_str();
  sub->add_option("--field", s.field_text,
                  "coefficient field: Q, GF:p or GF(p), p an odd prime")
      ->capture_default_str();
  if (with_seed) {
    sub->add_option("--seed", s.seed, "seed for randomized searches")
        ->capture_default_str();
    sub->add_option("--trials", s.trials, "random automorphisms to try")
        ->capture_default_str();
  }
}

void print_subspace(const Subspace& B) {
  std::cout << "dim=" << B.dim() << '\n';
  for (const CoordVector& row : B.rows()) {
    std::cout << "  " << format_multivector(from_coords(row)) << '\n';
  }
}

Subspace load_subspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open \"" + path + "\"");
  }
  return to_subspace(read_subspace_file(in));
}

int run(int argc, char** argv) {
  Session s;
  if (const char* env = std::getenv("GRASSLAB_FIELD")) s.field_text = env;
  if (const char* env = std::getenv("GRASSLAB_SEED")) {
    s.seed = std::strtoull(env, nullptr, 10);
  }

  CLI::App app{
      "grasslab: exact Grassmann-algebra workbench — evaluate expressions, "
      "classify Aut-stable subspaces and subalgebras, certify stability, "
      "and cross-validate against brute force"};
  app.require_subcommand(1);

  std::string expr_text;
  CLI::App* eval = app.add_subcommand(
      "eval", "evaluate an expression and print its canonical form");
  add_common(eval, s, false);
  eval->add_option("expr", expr_text, "expression, e.g. \"e1^e2 + [e1,e3]\"")
      ->required();

  CLI::App* center = app.add_subcommand("center", "basis of the center");
  add_common(center, s, false);
  bool brute = false;
  center->add_flag("--bruteforce", brute,
                   "solve the commutation equations instead of using the "
                   "even-part formula");

  CLI::App* com = app.add_subcommand(
      "com", "basis of the commutator subalgebra");
  add_common(com, s, false);

  CLI::App* list_stable = app.add_subcommand(
      "list-stable", "every Aut-stable subspace, with its canonical form");
  add_common(list_stable, s, false);

  bool unital = false;
  CLI::App* list_subalg = app.add_subcommand(
      "list-stable-subalgebras",
      "every Aut-stable subalgebra, plus discrepancy report");
  add_common(list_subalg, s, false);
  list_subalg->add_flag("--unital", unital,
                        "require subalgebras to contain 1 (adjoining the "
                        "unit line to the odd-tail shapes)");

  std::string check_path;
  CLI::App* check = app.add_subcommand(
      "check", "decide stability of the subspace in a file");
  add_common(check, s, true);
  check->add_option("-f,--file", check_path, "subspace file")->required();

  std::string hull_path;
  CLI::App* hull = app.add_subcommand(
      "hull", "smallest Aut-stable subspace containing the file's subspace");
  add_common(hull, s, false);
  hull->add_option("-f,--file", hull_path, "subspace file")->required();

  std::vector<std::string> image_texts;
  CLI::App* factor = app.add_subcommand(
      "factor", "split a map given by generator images as inner * parity");
  add_common(factor, s, false);
  factor->add_option("images", image_texts,
                     "n expressions, the images of e1..en");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the cross-validation harness");
  add_common(verify, s, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (eval->parsed()) {
    Multivector v = parse_expression(expr_text, s.n, s.field());
    std::cout << format_multivector(v) << '\n';
    return 0;
  }
  if (center->parsed()) {
    print_subspace(center_of(s.n, s.field(),
                             brute ? CenterMethod::BruteForce
                                   : CenterMethod::Formula));
    return 0;
  }
  if (com->parsed()) {
    print_subspace(commutator_subalgebra(s.n, s.field()));
    return 0;
  }
  if (list_stable->parsed()) {
    auto catalog = enumerate_stable_subspaces(s.n, s.field());
    std::cout << "n=" << s.n << " field=" << s.field().str()
              << " stable subspaces: " << catalog.size() << '\n';
    for (const auto& [form, B] : catalog) {
      std::cout << "form=" << describe(form) << " dim=" << B.dim() << '\n';
      for (const CoordVector& row : B.rows()) {
        std::cout << "  " << format_multivector(from_coords(row)) << '\n';
      }
    }
    return 0;
  }
  if (list_subalg->parsed()) {
    SubalgebraEnumeration out =
        enumerate_stable_subalgebras(s.n, s.field(), unital);
    std::cout << "n=" << s.n << " field=" << s.field().str() << " unital="
              << (unital ? "true" : "false")
              << " stable subalgebras: " << out.results.size() << '\n';
    for (const auto& [form, B] : out.results) {
      std::cout << "form=" << describe(form) << " dim=" << B.dim() << '\n';
      for (const CoordVector& row : B.rows()) {
        std::cout << "  " << format_multivector(from_coords(row)) << '\n';
      }
    }
    for (const DiscrepancyEntry& entry : out.discrepancies) {
      std::cout << format_discrepancy(entry) << '\n';
    }
    return 0;
  }
  if (check->parsed()) {
    Subspace B = load_subspace(check_path);
    StabilityCertificate cert = decide_stable(B, s.trials, s.seed);
    if (cert.verdict == Verdict::Stable) {
      std::cout << "STABLE: form " << describe(*cert.matched_form) << '\n';
      return 0;
    }
    const Witness& w = *cert.witness;
    std::cout << "UNSTABLE: witness sigma=" << w.sigma_name << ", v="
              << format_multivector(w.element) << ", image="
              << format_multivector(w.image) << '\n';
    std::cout << "sigma: " << format_map(w.sigma) << '\n';
    return 1;
  }
  if (hull->parsed()) {
    std::cout << format_subspace_file(stable_hull(load_subspace(hull_path)));
    return 0;
  }
  if (factor->parsed()) {
    if (static_cast<int>(image_texts.size()) != s.n) {
      throw Error(ErrorKind::WrongArity,
                  "expected " + std::to_string(s.n) + " generator images, got " +
                      std::to_string(image_texts.size()));
    }
    Field field = s.field();
    std::vector<Multivector> images;
    images.reserve(image_texts.size());
    for (const std::string& text : image_texts) {
      images.push_back(parse_expression(text, s.n, field));
    }
    Factorization split = factor_n1_f0(AlgebraMap::make(std::move(images)));
    std::cout << "a = " << format_multivector(split.inner_part) << '\n';
    std::cout << "f: " << format_map(split.parity_map) << '\n';
    return 0;
  }
  if (verify->parsed()) {
    CrossValidation cv = cross_validate(s.n, s.field(), s.seed, s.trials);
    std::cout << cv.text();
    std::cout << (cv.all_passed() ? "verify: all checks passed"
                                  : "verify: FAILURES present")
              << '\n';
    return cv.all_passed() ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
