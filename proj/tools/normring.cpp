// normring: exact arithmetic with orders and fractional ideals in number
// fields, and audits of ideal-norm super-multiplicativity.
//
// Exit codes: 0 success; 1 error or reproduction mismatch; 2 a strict
// violation was found by `audit supermult`; 64 usage error.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "normring/normring.hpp"

namespace {

using namespace normring;

std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) fail(errc::parse_error, "empty entry in integer list");
    out.emplace_back(tok);
  }
  if (out.empty()) fail(errc::parse_error, "empty integer list");
  return out;
}

// elements separated by ';', rational coordinates separated by ','
std::vector<FieldElem> parse_gens(const FieldPtr& k, const std::string& s) {
  std::vector<FieldElem> out;
  std::stringstream ss(s);
  std::string elem;
  while (std::getline(ss, elem, ';')) {
    FieldElem e = k->zero();
    std::stringstream es(elem);
    std::string tok;
    int idx = 0;
    while (std::getline(es, tok, ',')) {
      if (idx >= k->degree()) fail(errc::parse_error, "too many coordinates in generator");
      auto slash = tok.find('/');
      e.c[static_cast<size_t>(idx++)] =
          slash == std::string::npos
              ? Rat(Int(tok), 1)
              : Rat(Int(tok.substr(0, slash)), Int(tok.substr(slash + 1)));
    }
    out.push_back(e);
  }
  return out;
}

std::uint64_t env_seed() {
  if (const char* s = std::getenv("NORMRING_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty())
    std::cout << text;
  else
    write_text_file(output_path, text);
}

Order resolve_normalization(const LoadedOrder& lo) {
  return lo.normalization ? *lo.normalization : normalize(lo.order);
}

std::string rat_str(const Rat& q) { return q.str(); }

int run(int argc, char** argv) {
  CLI::App app{"exact arithmetic and norm audits for orders in number fields"};
  app.require_subcommand(1);

  std::uint64_t seed = env_seed();
  int trials = 200;
  int coord_bound = 10;
  long p_bound = 50;
  bool no_probes = false;
  std::string output, csv_path;

  // ---- order ----
  auto* order_cmd = app.add_subcommand("order", "create and inspect orders");
  order_cmd->require_subcommand(1);

  std::string poly_arg, suborder_arg, basis_arg, basis_den_arg = "1";
  bool assume_irred = false;
  auto* order_create_cmd = order_cmd->add_subcommand("create", "build an order document");
  order_create_cmd->add_option("--poly", poly_arg,
                               "monic polynomial, coefficients constant-term first")
      ->required();
  order_create_cmd->add_option("--suborder-index", suborder_arg,
                               "c@alpha builds Z + c*Z[alpha]");
  order_create_cmd->add_option("--basis", basis_arg, "n*n integer matrix, row-major");
  order_create_cmd->add_option("--basis-den", basis_den_arg, "basis denominator");
  order_create_cmd->add_flag("--assume-irreducible", assume_irred,
                             "record an assumed irreducibility certificate");
  order_create_cmd->add_option("-o,--output", output, "output path (default stdout)");

  std::string info_path;
  auto* order_info_cmd = order_cmd->add_subcommand("info", "discriminant, conductor, g");
  order_info_cmd->add_option("file", info_path, "order document")->required();

  // ---- ideal ----
  auto* ideal_cmd = app.add_subcommand("ideal", "fractional ideal arithmetic");
  ideal_cmd->require_subcommand(1);

  std::string ideal_order_path, ideal_gens;
  auto* ideal_make_cmd = ideal_cmd->add_subcommand("make", "ideal generated by field elements");
  ideal_make_cmd->add_option("--order", ideal_order_path, "order document")->required();
  ideal_make_cmd->add_option("--gens", ideal_gens,
                             "generators: elements ';'-separated, coordinates ','-separated")
      ->required();
  ideal_make_cmd->add_option("-o,--output", output, "output path (default stdout)");

  std::string ideal_a, ideal_b;
  auto* ideal_norm_cmd = ideal_cmd->add_subcommand("norm", "generalized index [R : I]");
  ideal_norm_cmd->add_option("file", ideal_a, "ideal document")->required();

  auto* ideal_mul_cmd = ideal_cmd->add_subcommand("mul", "product of two ideals");
  ideal_mul_cmd->add_option("a", ideal_a, "ideal document")->required();
  ideal_mul_cmd->add_option("b", ideal_b, "ideal document")->required();
  ideal_mul_cmd->add_option("-o,--output", output, "output path (default stdout)");

  auto* ideal_colon_cmd = ideal_cmd->add_subcommand("colon", "(A : B) = {x : xB <= A}");
  ideal_colon_cmd->add_option("a", ideal_a, "ideal document")->required();
  ideal_colon_cmd->add_option("b", ideal_b, "ideal document")->required();
  ideal_colon_cmd->add_option("-o,--output", output, "output path (default stdout)");

  auto* ideal_multring_cmd = ideal_cmd->add_subcommand("multring", "multiplier ring (I : I)");
  ideal_multring_cmd->add_option("file", ideal_a, "ideal document")->required();
  ideal_multring_cmd->add_option("-o,--output", output, "output path (default stdout)");

  // ---- audit ----
  auto* audit_cmd = app.add_subcommand("audit", "super-multiplicativity audits");
  audit_cmd->require_subcommand(1);

  std::string audit_path;
  auto* audit_sm_cmd = audit_cmd->add_subcommand("supermult", "sampled + structured probe audit");
  audit_sm_cmd->add_option("file", audit_path, "order document")->required();
  audit_sm_cmd->add_option("--seed", seed, "sampling seed (env NORMRING_SEED overrides default)");
  audit_sm_cmd->add_option("--trials", trials, "random trial count");
  audit_sm_cmd->add_option("--bound", coord_bound, "generator coordinate bound H");
  audit_sm_cmd->add_flag("--no-probes", no_probes, "disable structured probes");
  audit_sm_cmd->add_option("-o,--output", output, "report path (default stdout)");
  audit_sm_cmd->add_option("--csv", csv_path, "also write the trial table as CSV");

  auto* audit_dd_cmd = audit_cmd->add_subcommand("dedekind", "N(m^2) vs N(m)^2 detector");
  audit_dd_cmd->add_option("file", audit_path, "order document")->required();
  audit_dd_cmd->add_option("--p-bound", p_bound, "test maximal ideals above primes <= bound");
  audit_dd_cmd->add_option("-o,--output", output, "report path (default stdout)");

  auto* audit_t11_cmd =
      audit_cmd->add_subcommand("theorem11", "3-generator bound vs super-multiplicativity");
  audit_t11_cmd->add_option("file", audit_path, "order document")->required();
  audit_t11_cmd->add_option("--seed", seed, "sampling seed");
  audit_t11_cmd->add_option("--trials", trials, "random trial count per ring");
  audit_t11_cmd->add_option("--bound", coord_bound, "generator coordinate bound H");
  audit_t11_cmd->add_option("-o,--output", output, "report path (default stdout)");

  // ---- reproduce ----
  auto* repro_cmd = app.add_subcommand("reproduce", "rerun the fixed example suite");
  std::string repro_what = "paper", p_list_arg = "2,3,5";
  repro_cmd->add_option("what", repro_what, "suite name (paper)");
  repro_cmd->add_option("--p-list", p_list_arg, "primes for the degree-4 example");
  repro_cmd->add_option("--seed", seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 64;
  }

  try {
    if (order_create_cmd->parsed()) {
      FieldPtr k = NumberField::create(parse_int_list(poly_arg), assume_irred);
      Order r = equation_order(k);
      if (!suborder_arg.empty()) {
        auto at = suborder_arg.find("@alpha");
        if (at == std::string::npos || at == 0)
          fail(errc::parse_error, "--suborder-index expects c@alpha");
        r = suborder_index(k, Int(suborder_arg.substr(0, at)));
      } else if (!basis_arg.empty()) {
        std::vector<Int> entries = parse_int_list(basis_arg);
        int n = k->degree();
        if (static_cast<int>(entries.size()) != n * n)
          fail(errc::parse_error, "--basis needs n*n entries");
        IntMat m(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) m(i, j) = entries[static_cast<size_t>(i * n + j)];
        r = order_from_lattice(k, HnfLattice::from_rows(m, Int(basis_den_arg)));
      }
      emit(dump_document(order_to_json(r)), output);
      return 0;
    }

    if (order_info_cmd->parsed()) {
      LoadedOrder lo = load_order(info_path);
      const Order& r = lo.order;
      std::ostringstream out;
      out << "degree: " << r.degree() << "\n";
      out << "poly: " << r.field()->poly_str() << "\n";
      out << "certificate: " << r.field()->certificate().method;
      if (r.field()->certificate().witness_prime != 0)
        out << " (p = " << r.field()->certificate().witness_prime << ")";
      out << "\n";
      Int disc = order_disc(r);
      DiscFactorization fact = factor_disc(disc);
      out << "disc: " << disc << " =";
      if (fact.cofactor == -1) out << " -1 *";
      for (const auto& [p, e] : fact.factors) out << " " << p << "^" << e;
      if (!fact.complete()) out << " * [uncertified " << fact.cofactor << "]";
      out << "\n";
      Order rt = resolve_normalization(lo);
      out << "normalization basis: " << rt.lattice().basis().str() << " / " << rt.lattice().den()
          << (lo.normalization ? " (override)" : "") << "\n";
      out << "index [Rt:R]: " << lattice_index(rt.lattice(), r.lattice()) << "\n";
      FracIdeal cond = conductor(r, rt);
      out << "conductor: " << cond.lattice.basis().str() << " / " << cond.lattice.den()
          << ", norm " << rat_str(ideal_norm(cond)) << "\n";
      GlobalG g = g_global(r, rt);
      out << "g map:";
      for (const auto& [m, gl] : g.per_prime)
        out << " {m above " << m.p << ", res_deg " << m.res_deg << ": g = " << gl << "}";
      if (g.per_prime.empty()) out << " (no singular primes)";
      out << "\n";
      out << "g(R): " << (g.exact ? std::to_string(g.max_local)
                                  : std::string("<= 2 (all local values 1)"))
          << "\n";
      emit(out.str(), output);
      return 0;
    }

    if (ideal_make_cmd->parsed()) {
      LoadedOrder lo = load_order(ideal_order_path);
      FracIdeal i = ideal_generate(lo.order, parse_gens(lo.order.field(), ideal_gens));
      emit(dump_document(ideal_to_json(i, ideal_order_path)), output);
      return 0;
    }
    if (ideal_norm_cmd->parsed()) {
      LoadedIdeal li = load_ideal(ideal_a);
      std::cout << rat_str(ideal_norm(li.ideal)) << "\n";
      return 0;
    }
    if (ideal_mul_cmd->parsed() || ideal_colon_cmd->parsed()) {
      LoadedIdeal a = load_ideal(ideal_a);
      LoadedIdeal b = load_ideal(ideal_b);
      FracIdeal res = ideal_mul_cmd->parsed() ? ideal_product(a.ideal, b.ideal)
                                              : colon_ideal(a.ideal, b.ideal);
      emit(dump_document(ideal_to_json(res, a.order_ref)), output);
      return 0;
    }
    if (ideal_multring_cmd->parsed()) {
      LoadedIdeal a = load_ideal(ideal_a);
      Order mr = multiplier_ring(a.ideal);
      emit(dump_document(order_to_json(mr)), output);
      return 0;
    }

    if (audit_sm_cmd->parsed()) {
      LoadedOrder lo = load_order(audit_path);
      AuditConfig cfg;
      cfg.seed = seed;
      cfg.trials = trials;
      cfg.coord_bound = coord_bound;
      cfg.probes = !no_probes;
      AuditReport rep = supermult_sample(lo.order, cfg);
      emit(dump_document(audit_report_to_json(rep)), output);
      if (!csv_path.empty()) write_text_file(csv_path, audit_report_csv(rep));
      std::cerr << "trials " << rep.trials_run << ", violations " << rep.violations.size()
                << ", wall " << rep.wall_time_ms << " ms\n";
      return rep.clean() ? 0 : 2;
    }
    if (audit_dd_cmd->parsed()) {
      LoadedOrder lo = load_order(audit_path);
      DedekindReport rep = dedekind_test(lo.order, p_bound);
      emit(dump_document(dedekind_report_to_json(rep)), output);
      return 0;
    }
    if (audit_t11_cmd->parsed()) {
      LoadedOrder lo = load_order(audit_path);
      AuditConfig cfg;
      cfg.seed = seed;
      cfg.trials = trials;
      cfg.coord_bound = coord_bound;
      Theorem11Report rep = theorem11_audit(lo.order, resolve_normalization(lo), cfg);
      emit(dump_document(theorem11_report_to_json(rep)), output);
      std::cerr << rep.verdict << "\n";
      return 0;
    }

    if (repro_cmd->parsed()) {
      if (repro_what != "paper") fail(errc::parse_error, "unknown suite: " + repro_what);
      ReproTable t = reproduce_paper(parse_int_list(p_list_arg), seed);
      std::cout << repro_table_text(t);
      return t.all_pass ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
