// frobex command line tool: build finite rings and their character
// bimodules, run the weight condition / gamma / certificate pipeline, and
// brute-force the extension property on small codes.  Reports are
// deterministic JSON on stdout or --out.
//
// Exit codes: 0 completed with positive verdict, 1 negative verdict,
// 2 input error, 3 resource cap, 4 internal inconsistency.

#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "frobex/codes.hpp"
#include "frobex/errors.hpp"
#include "frobex/extension.hpp"
#include "frobex/io.hpp"
#include "frobex/u2f2_example.hpp"

namespace {

struct Opts {
  std::string ring_path;
  std::string weight_path;
  std::string out_path;
  long max_ring_size = frobex::FiniteRing::kDefaultSizeCap;
  long max_submodules = 20000;
  long max_codes = 10000;
  long max_isometries = 10000;
  long max_space = 65536;
  int n = 1;
  int max_n = 4;
  unsigned long seed = 1;
  std::vector<std::string> alphabet_gens;
};

frobex::SearchCaps search_caps(const Opts& o) {
  frobex::SearchCaps caps;
  caps.max_codes = o.max_codes;
  caps.max_isometries = o.max_isometries;
  caps.max_space = o.max_space;
  caps.seed = o.seed;
  return caps;
}

int checked_length(const Opts& o) {
  if (o.n < 0) throw frobex::InputError("length n must be nonnegative");
  if (o.n > o.max_n)
    throw frobex::ResourceError("length n exceeds cap " + std::to_string(o.max_n));
  return o.n;
}

frobex::FiniteRing load_ring(const Opts& o) {
  if (o.ring_path.empty()) throw frobex::InputError("--ring is required for this command");
  return frobex::ring_from_file(o.ring_path, o.max_ring_size);
}

int cmd_ring_info(const Opts& o) {
  const frobex::FiniteRing R = load_ring(o);
  frobex::write_report(frobex::report_ring_info(R), o.out_path);
  return 0;
}

int cmd_dual(const Opts& o) {
  const frobex::FiniteRing R = load_ring(o);
  const frobex::FrobeniusBimodule A(R);
  frobex::write_report(frobex::report_dual(R, A), o.out_path);
  return 0;
}

int cmd_whom(const Opts& o) {
  const frobex::FiniteRing R = load_ring(o);
  const frobex::FrobeniusBimodule A(R);
  frobex::write_report(frobex::report_whom(A), o.out_path);
  return 0;
}

int cmd_mobius(const Opts& o) {
  const frobex::FiniteRing R = load_ring(o);
  const frobex::FrobeniusBimodule A(R);
  frobex::write_report(frobex::report_mobius(A), o.out_path);
  return 0;
}

int cmd_condition(const Opts& o) {
  const frobex::FiniteRing R = load_ring(o);
  const frobex::FrobeniusBimodule A(R);
  const frobex::WeightFn w = frobex::weight_from_file(A, o.weight_path, true);
  const frobex::ConditionReport rep = frobex::check_condition(A, w, o.max_submodules);
  frobex::write_report(frobex::report_condition(A, rep), o.out_path);
  return rep.verdict ? 0 : 1;
}

int cmd_gamma(const Opts& o) {
  const frobex::FiniteRing R = load_ring(o);
  const frobex::FrobeniusBimodule A(R);
  const frobex::WeightFn w = frobex::weight_from_file(A, o.weight_path, true);
  frobex::SgFn gamma(R);
  try {
    gamma = frobex::construct_gamma(w, A, frobex::GammaOrder::kMinIndexFirst, o.max_submodules);
  } catch (const frobex::ConditionError& e) {
    std::fprintf(stderr, "frobex: condition: %s\n", e.what());
    return 1;
  }
  frobex::write_report(frobex::report_gamma(A, w, gamma), o.out_path);
  return 0;
}

int cmd_certify(const Opts& o) {
  const frobex::FiniteRing R = load_ring(o);
  const frobex::FrobeniusBimodule A(R);
  const frobex::WeightFn w = frobex::weight_from_file(A, o.weight_path, true);
  const frobex::ExtensionCertificate cert = frobex::certify(A, w, o.max_submodules);
  frobex::write_report(frobex::report_certificate(cert), o.out_path);
  return cert.valid ? 0 : 1;
}

int cmd_brute_force(const Opts& o) {
  const frobex::FiniteRing R = load_ring(o);
  const frobex::FrobeniusBimodule A(R);
  const frobex::WeightFn w = frobex::weight_from_file(A, o.weight_path, true);
  const frobex::ExtensionSearchReport rep =
      frobex::check_extension_property(A, w, checked_length(o), search_caps(o));
  frobex::write_report(frobex::report_brute_force(A, rep), o.out_path);
  return rep.verdict ? 0 : 1;
}

int cmd_other_alphabet(const Opts& o) {
  const frobex::FiniteRing R = load_ring(o);
  const frobex::FrobeniusBimodule A(R);
  const frobex::WeightFn w = frobex::weight_from_file(A, o.weight_path, true);
  if (o.alphabet_gens.empty())
    throw frobex::InputError("--alphabet-gen is required at least once");
  std::vector<int> gens;
  for (const auto& lab : o.alphabet_gens) gens.push_back(A.index_of_label(lab));
  const frobex::Submodule sub = A.submodule_span(frobex::Submodule::Side::kLeft, gens);
  const frobex::OtherAlphabetReport rep =
      frobex::check_other_alphabet(A, sub.elements, w, checked_length(o), search_caps(o));
  frobex::write_report(frobex::report_other_alphabet(A, rep), o.out_path);
  return rep.verdict ? 0 : 1;
}

int cmd_example_u2f2(const Opts& o) {
  const frobex::U2F2ExampleResult res = frobex::example_u2f2();
  frobex::write_report(frobex::report_example_u2f2(res), o.out_path);
  return res.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact weights, characters and code extension over finite rings"};
  app.require_subcommand(1);
  Opts o;

  auto add_common = [&](CLI::App* sub, bool needs_ring, bool needs_weight) {
    if (needs_ring) sub->add_option("--ring", o.ring_path, "ring spec JSON file")->required();
    if (needs_weight)
      sub->add_option("--weight", o.weight_path, "weight table JSON file")->required();
    sub->add_option("--out", o.out_path, "report output path (default stdout)");
    sub->add_option("--max-ring-size", o.max_ring_size, "ring size cap");
    return sub;
  };
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--max-submodules", o.max_submodules, "submodule enumeration cap");
    return sub;
  };
  auto add_code_caps = [&](CLI::App* sub) {
    sub->add_option("-n,--n", o.n, "code length");
    sub->add_option("--max-n", o.max_n, "cap on the code length");
    sub->add_option("--max-codes", o.max_codes, "code enumeration cap");
    sub->add_option("--max-isometries", o.max_isometries, "isometry count cap per code");
    sub->add_option("--max-space", o.max_space, "search space cap");
    sub->add_option("--seed", o.seed, "seed for randomized sanity checks");
    return sub;
  };

  std::function<int(const Opts&)> run;
  auto bind = [&](CLI::App* sub, int (*fn)(const Opts&)) {
    sub->callback([&run, fn]() { run = fn; });
  };

  bind(add_common(app.add_subcommand("ring-info", "ring tables, units, decomposition"), true,
                  false),
       cmd_ring_info);
  bind(add_common(app.add_subcommand("dual", "character bimodule of the ring"), true, false),
       cmd_dual);
  bind(add_common(app.add_subcommand("whom", "homogeneous weight and epsilon"), true, false),
       cmd_whom);
  bind(add_common(app.add_subcommand("mobius", "Mobius function of cyclic right submodules"),
                  true, false),
       cmd_mobius);
  bind(add_caps(add_common(
           app.add_subcommand("condition", "weight condition over all right submodules"), true,
           true)),
       cmd_condition);
  bind(add_caps(add_common(app.add_subcommand("gamma", "construct the certifying gamma"), true,
                           true)),
       cmd_gamma);
  bind(add_caps(add_common(
           app.add_subcommand("certify", "full extension certificate with re-verification"),
           true, true)),
       cmd_certify);
  bind(add_code_caps(add_caps(add_common(
           app.add_subcommand("brute-force", "exhaustive extension check on codes of length n"),
           true, true))),
       cmd_brute_force);
  {
    CLI::App* sub = app.add_subcommand("other-alphabet",
                                       "extension check over a submodule alphabet");
    add_code_caps(add_caps(add_common(sub, true, true)));
    sub->add_option("--alphabet-gen", o.alphabet_gens,
                    "generator label of the alphabet submodule (repeatable)");
    bind(sub, cmd_other_alphabet);
  }
  {
    CLI::App* sub = app.add_subcommand("example-u2f2",
                                       "regenerate the U_2(F_2) worked example and compare");
    sub->add_option("--out", o.out_path, "report output path (default stdout)");
    bind(sub, cmd_example_u2f2);
  }

  CLI11_PARSE(app, argc, argv);
  try {
    return run(o);
  } catch (const frobex::InputError& e) {
    std::fprintf(stderr, "frobex: input: %s\n", e.what());
    return 2;
  } catch (const frobex::ResourceError& e) {
    std::fprintf(stderr, "frobex: resource: %s\n", e.what());
    return 3;
  } catch (const frobex::ConditionError& e) {
    std::fprintf(stderr, "frobex: condition: %s\n", e.what());
    return 1;
  } catch (const frobex::InternalError& e) {
    std::fprintf(stderr, "frobex: internal: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "frobex: unexpected: %s\n", e.what());
    return 4;
  }
}
