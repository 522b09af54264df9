#pragma once

#include "classify.hpp"
#include "qha.hpp"
#include "zlattice.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace qhopf::cli {

using nlohmann::json;

struct RunConfig {
  std::string format = "tsv";
  std::size_t cap = kDefaultCap;
  std::string out_path;
};

namespace detail {

inline std::string join(const std::vector<i64> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline json int_json(const Int &x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline json intmat_json(const IntMat &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols; ++j) r.push_back(int_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

// A table with TSV and JSON renderings of the same rows.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  static std::string cell(const json &v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + cell(v[i]);
      return s;
    }
    return v.dump();
  }
  std::string tsv() const {
    std::string s;
    for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "\t" : "") + columns[i];
    s += "\n";
    for (auto &r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "\t" : "") + cell(r[i]);
      s += "\n";
    }
    return s;
  }
  json to_json() const {
    json a = json::array();
    for (auto &r : rows) {
      json o = json::object();
      for (std::size_t i = 0; i < r.size(); ++i) o[columns[i]] = r[i];
      a.push_back(o);
    }
    return a;
  }
  std::string render(const std::string &format) const { return format == "json" ? to_json().dump(1) + "\n" : tsv(); }
};

inline AbelianGroupSpec abelian_group(const std::string &spec) {
  auto G = parse_group(spec);
  auto *A = std::get_if<AbelianGroupSpec>(&G);
  if (!A) throw std::invalid_argument("an abelian group spec is required here");
  return *A;
}

inline std::vector<CocycleDatum> data_for(const AbelianGroupSpec &G, const std::string &datum) {
  if (datum.empty()) return all_data(G);
  auto a = parse_datum(G, datum);
  a.validate(G);
  return {a};
}

inline Table classify_abelian(const AbelianGroupSpec &G, const std::vector<CocycleDatum> &data, std::size_t cap,
                              FMethod method) {
  Table t;
  t.columns = {"group", "datum", "f", "lambda", "N"};
  for (auto &x : G.elements()) t.columns.push_back("v_exp(" + group_element_label(G, x) + ")");
  for (auto &a : data)
    for (auto &p : enumerate_pairs(G, a, cap, method)) {
      auto d = descriptor(G, a, p);
      std::vector<json> row{G.spec_string(), a.to_string(G.rank()), p.f, p.lambda, d.N};
      for (auto e : d.v_exps) row.push_back(e);
      t.rows.push_back(row);
    }
  return t;
}

inline std::vector<i64> parse_int_list(const std::string &s) {
  std::vector<i64> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    i64 x;
    try {
      x = std::stoll(tok, &pos);
    } catch (const std::exception &) {
      throw std::invalid_argument("bad integer '" + tok + "'");
    }
    if (pos != tok.size()) throw std::invalid_argument("bad integer '" + tok + "'");
    v.push_back(x);
  }
  return v;
}

// "f=0,1;lambda=0,1"
inline std::pair<std::vector<i64>, std::vector<i64>> parse_pair(const std::string &s) {
  std::vector<i64> f, l;
  bool hf = false, hl = false;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("pair component needs 'key=values': " + part);
    std::string k = part.substr(0, eq), v = part.substr(eq + 1);
    if (k == "f") f = parse_int_list(v), hf = true;
    else if (k == "lambda") l = parse_int_list(v), hl = true;
    else throw std::invalid_argument("unknown pair key '" + k + "'");
  }
  if (!hf || !hl) throw std::invalid_argument("pair needs both f and lambda");
  return {f, l};
}

inline std::string report_text(const AxiomReport &r) {
  std::string s;
  for (auto &x : r.results) s += x.name + " " + (x.pass ? "PASS" : "FAIL " + x.witness) + "\n";
  return s;
}

inline json report_json(const AxiomReport &r) {
  json a = json::array();
  for (auto &x : r.results) a.push_back({{"axiom", x.name}, {"pass", x.pass}, {"witness", x.witness}});
  return a;
}

} // namespace detail

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  using namespace detail;
  CLI::App app{"Rank-2 braided Hopf algebras over group-type quasi-Hopf algebras", "qhopf"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto add_common = [&](CLI::App *sc) {
    sc->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"tsv", "json"}));
    sc->add_option("--cap", cfg.cap, "exhaustive enumeration cap")->check(CLI::PositiveNumber);
    sc->add_option("--out", cfg.out_path, "write output to this path");
  };

  std::string result;
  std::function<void()> action;

  // classify
  auto *classify = app.add_subcommand("classify", "classify 2-dimensional braided Hopf algebras");
  classify->require_subcommand(1);
  std::string group, datum, method = "brute";
  auto *cab = classify->add_subcommand("abelian", "finite abelian group with a 3-cocycle");
  cab->add_option("--group", group, "abelian:m1,...,mn")->required();
  cab->add_option("--datum", datum, "cocycle datum, all data when omitted");
  cab->add_option("--method", method, "f-lattice solver")->check(CLI::IsMember({"brute", "snf"}));
  add_common(cab);
  cab->callback([&] {
    action = [&] {
      auto G = abelian_group(group);
      result = classify_abelian(G, data_for(G, datum), cfg.cap, method == "snf" ? FMethod::Snf : FMethod::Brute)
                   .render(cfg.format);
    };
  });

  i64 cm = 0, cc = 0;
  auto *ccy = classify->add_subcommand("cyclic", "cyclic group C_m with cocycle class c");
  ccy->add_option("--m", cm)->required();
  ccy->add_option("--c", cc)->required();
  add_common(ccy);
  ccy->callback([&] {
    action = [&] {
      auto r = cyclic_pairs(cm, cc);
      Table t;
      t.columns = {"m", "c", "f", "lambda"};
      for (auto [f, l] : r.pairs) t.rows.push_back({cm, cc, f, l});
      if (cfg.format == "json") {
        json j{{"m", cm}, {"c", cc}, {"exists", r.exists}, {"pairs", t.to_json()}};
        j["witness"] = r.witness ? json{{"f", r.witness->first}, {"lambda", r.witness->second}} : json(nullptr);
        result = j.dump(1) + "\n";
      } else {
        result = t.tsv();
      }
    };
  });

  i64 dn = 0;
  std::string dp = "all";
  auto *cdd = classify->add_subcommand("ddn", "double dihedral group with 3-cocycle class p");
  cdd->add_option("--n", dn)->required();
  cdd->add_option("--p", dp, "class in [0, 2n) or 'all'");
  add_common(cdd);
  cdd->callback([&] {
    action = [&] {
      if (dn < 2) throw std::invalid_argument("ddn needs n >= 2");
      std::vector<i64> ps;
      if (dp == "all")
        for (i64 p = 0; p < 2 * dn; ++p) ps.push_back(p);
      else
        ps = parse_int_list(dp);
      Table t;
      t.columns = {"n", "p", "branch", "modulus", "rho_exp"};
      for (i64 p : ps)
        for (auto &x : ddn_pairs(dn, p)) {
          std::vector<i64> ex;
          for (auto &e : x.rho.exps) ex.push_back(e);
          t.rows.push_back({dn, p, x.branch, x.rho.modulus, ex});
        }
      result = t.render(cfg.format);
    };
  });

  // orbits
  auto *orbits = app.add_subcommand("orbits", "count isomorphism classes of semisimple quasi-Hopf structures");
  i64 ocyc = 0;
  bool odim4 = false;
  auto *oc = orbits->add_option("--cyclic", ocyc, "k[C_n] reassociator orbits");
  auto *od = orbits->add_flag("--dim4", odim4, "semisimple dimension 4");
  oc->excludes(od);
  add_common(orbits);
  orbits->callback([&] {
    action = [&] {
      if (!odim4 && oc->count() == 0) throw CLI::ValidationError("orbits needs --cyclic <n> or --dim4");
      std::size_t v = odim4 ? dim4_semisimple_count() : orbit_count_cyclic(ocyc);
      if (cfg.format == "json")
        result = json{{odim4 ? "dim4" : "cyclic", odim4 ? json(4) : json(ocyc)}, {"count", v}}.dump() + "\n";
      else
        result = std::to_string(v) + "\n";
    };
  });

  // conic
  auto *conic = app.add_subcommand("conic", "integral points of the n = 2 conic");
  i64 m1 = 0, m2 = 0;
  conic->add_option("--m1", m1)->required();
  conic->add_option("--m2", m2)->required();
  conic->add_option("--datum", datum, "cocycle datum, all data when omitted");
  add_common(conic);
  conic->callback([&] {
    action = [&] {
      AbelianGroupSpec G({m1, m2});
      Table t;
      t.columns = {"datum", "x", "y", "lambda1", "lambda2", "k", "L"};
      for (auto &a : data_for(G, datum))
        for (auto &p : conic_scan(m1, m2, a, cfg.cap))
          t.rows.push_back({a.to_string(2), p.x, p.y, p.lambda1, p.lambda2, p.k, G.L()});
      result = t.render(cfg.format);
    };
  });

  // snf
  auto *snf = app.add_subcommand("snf", "Smith normal form of an integer matrix file");
  std::string snf_file;
  snf->add_option("file", snf_file, "whitespace-separated rows")->required();
  add_common(snf);
  snf->callback([&] {
    action = [&] {
      std::ifstream in(snf_file);
      if (!in) throw std::invalid_argument("cannot read " + snf_file);
      auto A = parse_intmat(in);
      auto D = smith_normal_form(A);
      if (cfg.format == "json") {
        json diag = json::array();
        for (auto &x : D.diag) diag.push_back(int_json(x));
        result = json{{"U", intmat_json(D.U)}, {"diag", diag}, {"V", intmat_json(D.V)}}.dump(1) + "\n";
      } else {
        std::string dg;
        for (std::size_t i = 0; i < D.diag.size(); ++i) dg += (i ? " " : "") + D.diag[i].get_str();
        result = "U\n" + format_intmat(D.U) + "diag\n" + dg + "\nV\n" + format_intmat(D.V);
      }
    };
  });

  // verify
  auto *verify = app.add_subcommand("verify", "check the quasi-Hopf axioms of a preset");
  std::string preset_name;
  verify->add_option("--preset", preset_name, "h4|h2|hq8:+|hq8:-|hq16:+|hq16:-|nichols:N|kGw:<group>:<datum>")
      ->required();
  add_common(verify);
  verify->callback([&] {
    action = [&] {
      auto Q = preset(preset_name);
      auto r = check_axioms(Q, cfg.cap);
      if (cfg.format == "json")
        result = json{{"preset", preset_name}, {"dim", Q.d}, {"axioms", report_json(r)}}.dump(1) + "\n";
      else
        result = report_text(r);
    };
  });

  // biproduct
  auto *bip = app.add_subcommand("biproduct", "H(theta) over kGw for a classified pair");
  std::string pair_text;
  bool check = false;
  bip->add_option("--group", group, "abelian:m1,...,mn")->required();
  bip->add_option("--datum", datum, "cocycle datum")->required();
  bip->add_option("--pair", pair_text, "f=...;lambda=...")->required();
  bip->add_flag("--check", check, "run the axiom suite on the biproduct");
  add_common(bip);
  bip->callback([&] {
    action = [&] {
      auto G = abelian_group(group);
      auto a = parse_datum(G, datum);
      a.validate(G);
      auto [f, l] = parse_pair(pair_text);
      G.check(f), G.check(l);
      if (!divisibility_holds(G, a, f)) throw std::domain_error("f fails the divisibility conditions");
      auto integ = integrality_E(G, a, f, l);
      if (!integ.pass) throw std::domain_error("pair fails the integrality condition");
      PairSolution p{f, l, integ.E_times_N};
      auto Q = kgw(G, a);
      auto sv = from_classification(G, a, p);
      auto pc = check_pair(Q, sv);
      if (!pc.ok) throw std::domain_error("pair check failed: " + pc.failure);
      auto B = biproduct_theta(Q, sv);
      std::optional<AxiomReport> r;
      if (check) r = check_axioms(B, cfg.cap);
      if (cfg.format == "json") {
        json j{{"group", G.spec_string()}, {"datum", a.to_string(G.rank())}, {"f", f}, {"lambda", l}, {"dim", B.d},
               {"pair", "PASS"}};
        if (r) j["axioms"] = report_json(*r);
        result = j.dump(1) + "\n";
      } else {
        result = "dim " + std::to_string(B.d) + "\npair PASS\n" + (r ? report_text(*r) : "");
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    action();
  } catch (const CLI::ValidationError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (cfg.out_path.empty()) {
    out << result;
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) {
      err << "error: cannot write " << cfg.out_path << "\n";
      return 1;
    }
    f << result;
  }
  return 0;
}

} // namespace qhopf::cli
