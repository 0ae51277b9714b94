#pragma once

// On-disk formats. Text documents (JSON) with every integer as a decimal
// string; object keys are sorted and rationals are serialized as "num/den",
// so identical data always produces identical bytes.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "normring/audit.hpp"

namespace normring {

using nlohmann::json;

inline json rat_to_json(const Rat& q) { return rat_num(q).str() + "/" + rat_den(q).str(); }

inline Rat rat_from_json(const json& j) {
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s), 1);
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

inline json mat_to_json(const IntMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) rows.push_back(m(i, j).str());
  return rows;
}

inline IntMat mat_from_json(const json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows * cols)
    fail(errc::parse_error, "basis_num must hold " + std::to_string(rows * cols) + " entries");
  IntMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = Int(j[static_cast<size_t>(i * cols + c)].get<std::string>());
  return m;
}

inline json lattice_to_json(const HnfLattice& l) {
  return json{{"basis_num", mat_to_json(l.basis())}, {"basis_den", l.den().str()}};
}

// ---------------------------------------------------------------------------
// Order documents.
// ---------------------------------------------------------------------------

struct LoadedOrder {
  Order order;
  std::optional<Order> normalization;  // validated override when present
  bool recanonicalized = false;        // input basis was not in canonical form
};

inline json order_to_json(const Order& r, const std::optional<Order>& normalization = {}) {
  json doc;
  json poly = json::array();
  for (const Int& c : r.field()->poly()) poly.push_back(c.str());
  doc["poly"] = poly;
  doc["basis_num"] = mat_to_json(r.lattice().basis());
  doc["basis_den"] = r.lattice().den().str();
  doc["assume_irreducible"] = r.field()->certificate().assumed;
  if (normalization) doc["normalization"] = lattice_to_json(normalization->lattice());
  return doc;
}

inline LoadedOrder order_from_json(const json& doc) {
  if (!doc.contains("poly") || !doc.contains("basis_num") || !doc.contains("basis_den"))
    fail(errc::parse_error, "order document requires poly, basis_num, basis_den");
  std::vector<Int> poly;
  for (const auto& c : doc["poly"]) poly.emplace_back(c.get<std::string>());
  bool assume = doc.value("assume_irreducible", false);
  FieldPtr k = NumberField::create(poly, assume);
  int n = k->degree();
  IntMat raw = mat_from_json(doc["basis_num"], n, n);
  Int den = Int(doc["basis_den"].get<std::string>());
  HnfLattice lattice = HnfLattice::from_rows(raw, den);
  LoadedOrder out;
  out.recanonicalized = !(lattice.basis() == raw && lattice.den() == den);
  out.order = order_from_lattice(k, lattice);
  if (doc.contains("normalization")) {
    const json& nj = doc["normalization"];
    IntMat nraw = mat_from_json(nj.at("basis_num"), n, n);
    Int nden = Int(nj.at("basis_den").get<std::string>());
    Order rt = order_from_lattice(k, HnfLattice::from_rows(nraw, nden));
    validate_normalization(out.order, rt);
    out.normalization = rt;
  }
  return out;
}

inline std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::parse_error, "cannot open " + path + " for writing");
  f << text;
}

inline json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(errc::parse_error, "cannot open " + path);
  json doc;
  try {
    f >> doc;
  } catch (const json::exception& e) {
    fail(errc::parse_error, std::string(e.what()) + " in " + path);
  }
  return doc;
}

inline void save_order(const Order& r, const std::string& path,
                       const std::optional<Order>& normalization = {}) {
  write_text_file(path, dump_document(order_to_json(r, normalization)));
}

inline LoadedOrder load_order(const std::string& path) { return order_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Ideal documents.
// ---------------------------------------------------------------------------

inline json ideal_to_json(const FracIdeal& i, const std::string& order_ref) {
  json doc;
  doc["order_ref"] = order_ref;
  doc["basis_num"] = mat_to_json(i.lattice.basis());
  doc["basis_den"] = i.lattice.den().str();
  return doc;
}

inline void save_ideal(const FracIdeal& i, const std::string& order_ref, const std::string& path) {
  write_text_file(path, dump_document(ideal_to_json(i, order_ref)));
}

struct LoadedIdeal {
  FracIdeal ideal;
  std::string order_ref;
  bool recanonicalized = false;
};

inline LoadedIdeal load_ideal(const std::string& path) {
  json doc = read_json_file(path);
  if (!doc.contains("order_ref") || !doc.contains("basis_num") || !doc.contains("basis_den"))
    fail(errc::parse_error, "ideal document requires order_ref, basis_num, basis_den");
  std::string ref = doc["order_ref"].get<std::string>();
  std::filesystem::path refpath(ref);
  if (refpath.is_relative()) refpath = std::filesystem::path(path).parent_path() / refpath;
  LoadedOrder lo = load_order(refpath.string());
  int n = lo.order.degree();
  IntMat raw = mat_from_json(doc["basis_num"], n, n);
  Int den = Int(doc["basis_den"].get<std::string>());
  HnfLattice lattice = HnfLattice::from_rows(raw, den);
  LoadedIdeal out;
  out.order_ref = ref;
  out.recanonicalized = !(lattice.basis() == raw && lattice.den() == den);
  out.ideal = ideal_from_lattice(lo.order, lattice);
  return out;
}

// ---------------------------------------------------------------------------
// Report documents. Wall time stays out of the serialized form so that
// identical inputs give byte-identical files.
// ---------------------------------------------------------------------------

inline json pair_record_to_json(const PairRecord& p) {
  return json{{"i", lattice_to_json(p.i_lattice)},
              {"j", lattice_to_json(p.j_lattice)},
              {"n_i", rat_to_json(p.n_i)},
              {"n_j", rat_to_json(p.n_j)},
              {"n_ij", rat_to_json(p.n_ij)},
              {"source", p.source}};
}

inline json audit_report_to_json(const AuditReport& r) {
  json doc;
  // sampling cannot prove the inequality for all pairs; only a recorded
  // violation is a certificate
  doc["summary"] = r.violations.empty()
                       ? "no violation found (statistical evidence, not a proof)"
                       : "exact violations recorded (replayable certificates)";
  doc["order_digest"] = r.order_digest;
  doc["config"] = json{{"seed", r.config.seed},
                       {"trials", r.config.trials},
                       {"coord_bound", r.config.coord_bound},
                       {"probes", r.config.probes}};
  doc["trials_run"] = r.trials_run;
  json rows = json::array();
  for (const TrialRow& row : r.rows)
    rows.push_back(json{{"n_i", rat_to_json(row.n_i)},
                        {"n_j", rat_to_json(row.n_j)},
                        {"n_ij", rat_to_json(row.n_ij)},
                        {"violation", row.violation},
                        {"submult_witness", row.submult_witness},
                        {"source", row.source}});
  doc["rows"] = rows;
  json viols = json::array();
  for (const PairRecord& p : r.violations) viols.push_back(pair_record_to_json(p));
  doc["violations"] = viols;
  json wits = json::array();
  for (const PairRecord& p : r.submult_witnesses) wits.push_back(pair_record_to_json(p));
  doc["submult_witnesses"] = wits;
  doc["notes"] = r.notes;
  return doc;
}

inline HnfLattice lattice_from_json(const json& j, int n) {
  return HnfLattice::from_rows(mat_from_json(j.at("basis_num"), n, n),
                               Int(j.at("basis_den").get<std::string>()));
}

inline PairRecord pair_record_from_json(const json& j, int n) {
  PairRecord p;
  p.i_lattice = lattice_from_json(j.at("i"), n);
  p.j_lattice = lattice_from_json(j.at("j"), n);
  p.n_i = rat_from_json(j.at("n_i"));
  p.n_j = rat_from_json(j.at("n_j"));
  p.n_ij = rat_from_json(j.at("n_ij"));
  p.source = j.at("source").get<std::string>();
  return p;
}

// Inverse of audit_report_to_json; n is the ambient degree of the lattices.
inline AuditReport audit_report_from_json(const json& doc, int n) {
  AuditReport r;
  try {
    r.order_digest = doc.at("order_digest").get<std::string>();
    const json& cfg = doc.at("config");
    r.config.seed = cfg.at("seed").get<std::uint64_t>();
    r.config.trials = cfg.at("trials").get<int>();
    r.config.coord_bound = cfg.at("coord_bound").get<int>();
    r.config.probes = cfg.at("probes").get<bool>();
    r.trials_run = doc.at("trials_run").get<int>();
    for (const json& row : doc.at("rows")) {
      TrialRow t;
      t.n_i = rat_from_json(row.at("n_i"));
      t.n_j = rat_from_json(row.at("n_j"));
      t.n_ij = rat_from_json(row.at("n_ij"));
      t.violation = row.at("violation").get<bool>();
      t.submult_witness = row.at("submult_witness").get<bool>();
      t.source = row.at("source").get<std::string>();
      r.rows.push_back(std::move(t));
    }
    for (const json& v : doc.at("violations")) r.violations.push_back(pair_record_from_json(v, n));
    for (const json& v : doc.at("submult_witnesses"))
      r.submult_witnesses.push_back(pair_record_from_json(v, n));
    for (const json& note : doc.at("notes")) r.notes.push_back(note.get<std::string>());
  } catch (const json::exception& e) {
    fail(errc::parse_error, std::string("audit report: ") + e.what());
  }
  return r;
}

inline std::string audit_report_csv(const AuditReport& r) {
  std::ostringstream out;
  out << "n_i,n_j,n_ij,violation\n";
  for (const TrialRow& row : r.rows)
    out << rat_num(row.n_i) << "/" << rat_den(row.n_i) << "," << rat_num(row.n_j) << "/"
        << rat_den(row.n_j) << "," << rat_num(row.n_ij) << "/" << rat_den(row.n_ij) << ","
        << (row.violation ? 1 : 0) << "\n";
  return out.str();
}

inline json dedekind_report_to_json(const DedekindReport& r) {
  json doc;
  doc["p_bound"] = r.p_bound;
  doc["consistent_up_to_bound"] = r.consistent;
  doc["verdict"] = r.consistent ? "Dedekind-consistent up to p_bound" : "not Dedekind";
  json rows = json::array();
  for (const DedekindRow& row : r.rows)
    rows.push_back(json{{"p", row.p.str()},
                        {"m", lattice_to_json(row.m_lattice)},
                        {"norm_m", row.norm_m.str()},
                        {"norm_m2", row.norm_m2.str()},
                        {"ok", row.ok}});
  doc["rows"] = rows;
  return doc;
}

inline json counterexample_to_json(const Counterexample& c) {
  json doc;
  doc["extension"] = lattice_to_json(c.extension.lattice());
  doc["i"] = lattice_to_json(c.i.lattice);
  doc["j"] = lattice_to_json(c.j.lattice);
  doc["index_i"] = c.idx_i.str();
  doc["index_j"] = c.idx_j.str();
  doc["index_ij"] = c.idx_ij.str();
  json xc = json::array(), yc = json::array();
  for (const Rat& v : c.x.c) xc.push_back(rat_to_json(v));
  for (const Rat& v : c.y.c) yc.push_back(rat_to_json(v));
  doc["witness_x"] = xc;
  doc["witness_y"] = yc;
  return doc;
}

inline json theorem11_report_to_json(const Theorem11Report& r) {
  json doc;
  json gmap = json::array();
  for (const auto& [m, g] : r.g.per_prime)
    gmap.push_back(json{{"p", m.p.str()},
                        {"m", lattice_to_json(m.ideal.lattice)},
                        {"res_deg", m.res_deg},
                        {"g_local", g}});
  doc["g"] = json{{"per_prime", gmap}, {"max_local", r.g.max_local}, {"exact", r.g.exact}};
  doc["verdict"] = r.verdict;
  if (r.has_base_audit) doc["base_audit"] = audit_report_to_json(r.base_audit);
  json exts = json::array();
  for (const ExtensionAudit& e : r.extensions)
    exts.push_back(json{{"m", lattice_to_json(e.m_lattice)},
                        {"extension", lattice_to_json(e.extension_lattice)},
                        {"audit", audit_report_to_json(e.audit)}});
  doc["extensions"] = exts;
  if (r.counterexample) doc["counterexample"] = counterexample_to_json(*r.counterexample);
  return doc;
}

inline void save_report(const json& doc, const std::string& path) {
  write_text_file(path, dump_document(doc));
}

}  // namespace normring
