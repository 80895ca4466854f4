#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lagr/error.hpp"
#include "lagr/poisson.hpp"

namespace {

using namespace lagr;

// Everything below prints through one of three renderers so the same rows
// back all output modes. Cells never contain commas: subsets are joined with
// spaces and the empty set is "-", which keeps the CSV mode delimiter-free.

struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const TextTable& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

std::string render_md(const TextTable& t) {
  std::ostringstream os;
  os << '|';
  for (const auto& h : t.header) os << ' ' << h << " |";
  os << "\n|";
  for (size_t i = 0; i < t.header.size(); ++i) os << " --- |";
  os << '\n';
  for (const auto& row : t.rows) {
    os << '|';
    for (const auto& cell : row) os << ' ' << cell << " |";
    os << '\n';
  }
  return os.str();
}

std::string subset_cell(const std::vector<int>& s) {
  if (s.empty()) return "-";
  std::ostringstream os;
  for (size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << 'a' << (s[i] + 1);
  return os.str();
}

std::string d_cell(const BDTriple& t) {
  if (t.S.empty()) return "-";
  std::ostringstream os;
  for (size_t i = 0; i < t.S.size(); ++i)
    os << (i ? " " : "") << 'a' << (t.S[i] + 1) << '>' << 'a' << (t.d_img[i] + 1);
  return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---- --triple parsing -------------------------------------------------

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

// Splits on commas that sit outside braces, so "{a1,a2},{a1,a2},id" comes
// apart into its three fields.
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  parts.push_back(cur);
  return parts;
}

int parse_simple_name(const std::string& tok_in) {
  std::string tok = strip(tok_in);
  bool ok = tok.size() >= 2 && tok[0] == 'a';
  for (size_t i = 1; ok && i < tok.size(); ++i) ok = tok[i] >= '0' && tok[i] <= '9';
  if (!ok || tok == "a0")
    throw usage_error("simple roots are named a1, a2, ...: got '" + tok_in + "'");
  return std::stoi(tok.substr(1)) - 1;
}

std::vector<int> parse_subset(const std::string& text_in) {
  std::string text = strip(text_in);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw usage_error("subsets are brace-delimited, like {a1,a2} or {}: got '" + text_in + "'");
  std::string inner = strip(text.substr(1, text.size() - 2));
  std::vector<int> out;
  if (inner.empty()) return out;
  size_t pos = 0;
  while (pos != std::string::npos) {
    size_t next = inner.find(',', pos);
    std::string tok = next == std::string::npos ? inner.substr(pos) : inner.substr(pos, next - pos);
    out.push_back(parse_simple_name(tok));
    pos = next == std::string::npos ? next : next + 1;
  }
  return out;
}

// "{a1},{a1},id" or "{a1,a2},{a1,a2},{a2,a1}"; the third field is either the
// literal "id" (then T must equal S) or the image list aligned with S as
// written. make_triple re-validates ranges, bijectivity, and the isometry
// condition.
BDTriple parse_triple_arg(const RootSystem& rs, const std::string& text) {
  std::vector<std::string> parts = split_top_level(text);
  if (parts.size() != 3)
    throw usage_error("--triple wants three comma-separated fields, like \"{a1},{a1},id\"");
  std::vector<int> S = parse_subset(parts[0]);
  std::vector<int> T = parse_subset(parts[1]);
  std::string dspec = strip(parts[2]);

  std::vector<int> d_img;
  if (dspec == "id") {
    std::vector<int> s_sorted = S, t_sorted = T;
    std::sort(s_sorted.begin(), s_sorted.end());
    std::sort(t_sorted.begin(), t_sorted.end());
    if (s_sorted != t_sorted) throw usage_error("--triple: d = id needs T equal to S");
    d_img = S;
  } else {
    d_img = parse_subset(dspec);
    if (d_img.size() != S.size())
      throw usage_error("--triple: the image list must have one entry per element of S");
  }

  // make_triple wants S ascending with d_img aligned
  std::vector<std::pair<int, int>> paired;
  for (size_t i = 0; i < S.size(); ++i) paired.emplace_back(S[i], d_img[i]);
  std::sort(paired.begin(), paired.end());
  for (size_t i = 0; i < paired.size(); ++i) {
    S[i] = paired[i].first;
    d_img[i] = paired[i].second;
  }
  std::sort(T.begin(), T.end());
  return make_triple(rs, S, T, d_img);
}

// ---- commands ----------------------------------------------------------

// Root-system and model caps: 0 keeps each library default; anything else
// replaces both, so lifting the cap is a single explicit opt-in.
RootSystem make_rs(const std::string& spec, int rank_cap) {
  return rank_cap > 0 ? build_root_system(spec, rank_cap) : build_root_system(spec);
}

LieAlgebraModel make_model(const RootSystem& rs, int rank_cap) {
  return rank_cap > 0 ? build_lie_algebra(rs, rank_cap) : build_lie_algebra(rs);
}

int run_census(const std::string& spec, bool strata, const std::string& format, int rank_cap) {
  RootSystem rs = make_rs(spec, rank_cap);
  WeylGroup wg(rs);
  LieAlgebraModel model = make_model(rs, rank_cap);
  std::string full_json = census_json(model, wg);

  if (format == "json") {
    if (strata) {
      std::cout << full_json << '\n';
      return 0;
    }
    nlohmann::json full = nlohmann::json::parse(full_json);
    nlohmann::json out;
    out["type"] = full["type"];
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& row : full["triples"]) {
      if (row["isComponent"] != true) continue;
      nlohmann::json c;
      c["S"] = row["S"];
      c["T"] = row["T"];
      c["d"] = row["d"];
      c["eps"] = row["eps"];
      c["dim"] = row["stratumDim"];
      comps.push_back(std::move(c));
    }
    out["count"] = comps.size();
    out["components"] = std::move(comps);
    if (full.contains("note")) out["note"] = full["note"];
    std::cout << out.dump(2) << '\n';
    return 0;
  }

  std::vector<StratumEntry> entries = stratum_census(model, wg);
  TextTable table;
  if (strata) {
    table.header = {"S", "T", "d", "eps", "orbitDim", "stratumDim", "component"};
    for (const StratumEntry& e : entries)
      table.rows.push_back({subset_cell(e.triple.S), subset_cell(e.triple.T), d_cell(e.triple),
                            std::to_string(e.eps), std::to_string(e.orbit_dim),
                            std::to_string(e.stratum_dim), yes_no(e.is_component)});
  } else {
    table.header = {"S", "T", "d", "eps", "dim"};
    for (const StratumEntry& e : entries) {
      if (!e.is_component) continue;
      table.rows.push_back({subset_cell(e.triple.S), subset_cell(e.triple.T), d_cell(e.triple),
                            std::to_string(e.eps), std::to_string(e.stratum_dim)});
    }
  }
  if (format == "csv") {
    std::cout << render_csv(table);
  } else {
    std::cout << render_md(table);
    nlohmann::json full = nlohmann::json::parse(full_json);
    if (full.contains("note")) std::cout << '\n' << full["note"].get<std::string>() << '\n';
  }
  return 0;
}

int run_bd(const std::string& spec, bool nilpotent_only, const std::string& format, int rank_cap) {
  RootSystem rs = make_rs(spec, rank_cap);
  std::vector<BDTriple> triples = enumerate_triples(rs, nilpotent_only);

  if (format == "json") {
    nlohmann::json out;
    out["type"] = rs.type.str();
    out["count"] = triples.size();
    nlohmann::json rows = nlohmann::json::array();
    for (const BDTriple& t : triples) {
      nlohmann::json row;
      row["S"] = t.S;
      row["T"] = t.T;
      row["d"] = t.d_img;
      row["nilpotent"] = is_nilpotent(rs, t);
      rows.push_back(std::move(row));
    }
    out["triples"] = std::move(rows);
    std::cout << out.dump(2) << '\n';
    return 0;
  }

  TextTable table;
  table.header = {"S", "T", "d", "nilpotent"};
  for (const BDTriple& t : triples)
    table.rows.push_back(
        {subset_cell(t.S), subset_cell(t.T), d_cell(t), yes_no(is_nilpotent(rs, t))});
  std::cout << (format == "csv" ? render_csv(table) : render_md(table));
  return 0;
}

std::string nonempty_cell(bool conditional) { return conditional ? "unknown" : "yes"; }

int emit_rank_rows(const std::vector<RankRow>& rows, const std::string& format,
                   const std::string& type, std::uint64_t seed, int samples) {
  if (format == "csv") {
    TextTable table;
    table.header = {"u", "v", "w", "dim", "rank", "correction", "nonempty"};
    for (const RankRow& r : rows)
      table.rows.push_back({r.u.word_str(), r.v.word_str(), r.w.word_str(), std::to_string(r.dim),
                            std::to_string(r.rank), std::to_string(r.correction),
                            nonempty_cell(r.conditional)});
    std::cout << render_csv(table);
    return 0;
  }
  if (format == "json") {
    nlohmann::json out;
    out["type"] = type;
    out["seed"] = seed;
    out["samples"] = samples;
    nlohmann::json arr = nlohmann::json::array();
    for (const RankRow& r : rows) {
      nlohmann::json row;
      row["u"] = r.u.word_str();
      row["v"] = r.v.word_str();
      row["w"] = r.w.word_str();
      row["dim"] = r.dim;
      row["rank"] = r.rank;
      row["correction"] = r.correction;
      row["nonempty"] = nonempty_cell(r.conditional);
      arr.push_back(std::move(row));
    }
    out["rows"] = std::move(arr);
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  TextTable table;
  table.header = {"u", "v", "w", "dim", "rank", "correction", "nonempty"};
  for (const RankRow& r : rows)
    table.rows.push_back({r.u.word_str(), r.v.word_str(), r.w.word_str(), std::to_string(r.dim),
                          std::to_string(r.rank), std::to_string(r.correction),
                          nonempty_cell(r.conditional)});
  std::cout << render_md(table);
  return 0;
}

int run_rank_flag(const RootSystem& rs, const std::string& format, bool all, bool have_cell,
                  const std::string& u_str, const std::string& v_str, const std::string& w_str,
                  std::uint64_t seed, int samples) {
  WeylGroup wg(rs);
  if (all) {
    if (format == "csv") {
      std::cout << rank_table_csv(wg, seed, samples);
      return 0;
    }
    return emit_rank_rows(rank_table(wg, seed, samples), format, rs.type.str(), seed, samples);
  }
  if (!have_cell)
    throw usage_error("rank flag: pass --all for the full grid or name a cell with --u/--v/--w");
  WeylElement u = wg.parse(u_str), v = wg.parse(v_str), w = wg.parse(w_str);
  DoubleBruhatRank closed = double_bruhat_rank(wg, u, v, w);
  Rng rng(seed);
  CellStatus st = nonempty_check(rs, wg, u, v, w, rng, samples);
  std::vector<RankRow> rows{RankRow{u, v, w, closed.dim, closed.rank, closed.dim - closed.rank,
                                    st == CellStatus::Unknown}};
  return emit_rank_rows(rows, format, rs.type.str(), seed, samples);
}

int run_rank_conj(const RootSystem& rs, const std::string& format, long dim_class) {
  if (dim_class < 0) throw usage_error("rank conj: pass the class dimension with --dimC");
  WeylGroup wg(rs);

  // The w = e cell is the big cell; when the class meets it the leaf there
  // has full rank, hence is open and dense in the class.
  TextTable table;
  table.header = {"w", "rank", "nonempty", "leaf"};
  nlohmann::json arr = nlohmann::json::array();
  for (const WeylElement& w : wg.elements()) {
    ConjugacyRank cr = conjugacy_rank(dim_class, w);
    std::string leaf = (w.is_identity() && !cr.cell_empty) ? "open-dense" : "-";
    table.rows.push_back({w.word_str(), std::to_string(cr.rank), yes_no(!cr.cell_empty), leaf});
    nlohmann::json row;
    row["w"] = w.word_str();
    row["rank"] = cr.rank;
    row["nonempty"] = !cr.cell_empty;
    row["leaf"] = leaf;
    arr.push_back(std::move(row));
  }
  if (format == "json") {
    nlohmann::json out;
    out["type"] = rs.type.str();
    out["dimC"] = dim_class;
    out["rows"] = std::move(arr);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << (format == "csv" ? render_csv(table) : render_md(table));
  }
  return 0;
}

int run_rank_general(const RootSystem& rs, const std::string& format, const std::string& triple_str,
                     const std::string& v_witness, const std::string& v_str,
                     const std::string& w_str, const std::string& v1_str, int rank_cap) {
  if (triple_str.empty()) throw usage_error("rank general: pass the triple with --triple");
  WeylGroup wg(rs);
  LieAlgebraModel model = make_model(rs, rank_cap);
  BDTriple t = parse_triple_arg(rs, triple_str);

  std::vector<Mat<QExt>> witnesses = parity_witnesses(rs, t);
  Mat<QExt> v_rows;
  if (v_witness == "diag") {
    v_rows = witnesses[0];
  } else {
    if (witnesses.size() < 2)
      throw usage_error("rank general: this triple has a zero center, only --V diag applies");
    v_rows = witnesses[1];
  }

  OrbitLabel o;
  o.kind = OrbitKind::GDelta;
  o.triple = t;
  o.v_rows = v_rows;
  o.v = wg.parse(v_str);
  o.m = identity_torus(rs.rank);

  OrbitLabel o_prime;
  o_prime.kind = OrbitKind::BB;
  o_prime.triple = t;
  o_prime.v_rows = v_rows;
  o_prime.w = wg.parse(w_str);
  o_prime.v = wg.parse(v1_str);

  PoissonRank pr = pi0_rank(model, wg, o, o_prime);

  if (format == "json") {
    nlohmann::json out;
    out["type"] = rs.type.str();
    out["S"] = t.S;
    out["T"] = t.T;
    out["d"] = t.d_img;
    out["V"] = v_witness;
    out["v"] = o.v.word_str();
    out["w"] = o_prime.w.word_str();
    out["v1"] = o_prime.v.word_str();
    out["dim"] = pr.dim;
    out["rank"] = pr.rank;
    out["correction"] = pr.correction;
    out["orbitDim"] = pr.dim_orbit;
    out["borelOrbitDim"] = pr.dim_borel_orbit;
    out["empty"] = pr.cell_empty;
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  TextTable table;
  table.header = {"S",    "T",   "d",  "V",          "v",        "w",
                  "v1",   "dim", "rank", "correction", "orbitDim", "borelOrbitDim",
                  "empty"};
  table.rows.push_back({subset_cell(t.S), subset_cell(t.T), d_cell(t), v_witness,
                        o.v.word_str(), o_prime.w.word_str(), o_prime.v.word_str(),
                        std::to_string(pr.dim), std::to_string(pr.rank),
                        std::to_string(pr.correction), std::to_string(pr.dim_orbit),
                        std::to_string(pr.dim_borel_orbit), yes_no(pr.cell_empty)});
  std::cout << (format == "csv" ? render_csv(table) : render_md(table));
  return 0;
}

int run_verify(const std::string& spec, const std::string& format, int rank_cap, long oracle_cap) {
  RootSystem rs = make_rs(spec, rank_cap);
  WeylGroup wg(rs);
  std::vector<BDTriple> triples = enumerate_triples(rs);

  long labels = 0;
  for (const BDTriple& t : triples) labels += long(wg.min_coset_reps(t.T).size());
  // Four exact solves per label: axioms, normalizer, intersection, nilpotency.
  long planned = 4 * labels;
  if (planned > oracle_cap)
    throw cap_error("verify " + rs.type.str() + ": " + std::to_string(planned) +
                    " oracle solves planned, the cap is " + std::to_string(oracle_cap));

  LieAlgebraModel model = make_model(rs, rank_cap);
  TorusElement m = identity_torus(rs.rank);
  long lagr = 0, norm = 0, inter = 0, nilp = 0;
  for (const BDTriple& t : triples) {
    Mat<QExt> v_rows = parity_witnesses(rs, t)[0];
    for (const WeylElement& v : wg.min_coset_reps(t.T)) {
      DoubleSubspace l = build_lagrangian(model, t, v_rows, v, m);
      check(is_lagrangian_subalgebra(model, l),
            "verify: constructed subspace failed the Lagrangian axioms on " + t.str() +
                ", v = " + v.word_str());
      ++lagr;
      normalizer_in_diagonal(model, wg, t, v_rows, v, m);
      ++norm;
      intersect_with_diagonal(model, wg, t, v_rows, v, m);
      ++inter;
      phi_nilpotency(model, wg, t, v, m);
      ++nilp;
    }
  }

  if (format == "json") {
    nlohmann::json out;
    out["type"] = rs.type.str();
    out["triples"] = triples.size();
    out["labels"] = labels;
    nlohmann::json checks;
    checks["lagrangianAxioms"] = lagr;
    checks["normalizerFormula"] = norm;
    checks["diagonalIntersection"] = inter;
    checks["phiNilpotency"] = nilp;
    out["checks"] = std::move(checks);
    out["total"] = lagr + norm + inter + nilp;
    out["passed"] = true;
    std::cout << out.dump(2) << '\n';
    return 0;
  }

  TextTable table;
  table.header = {"check", "count", "status"};
  table.rows.push_back({"lagrangian axioms", std::to_string(lagr), "passed"});
  table.rows.push_back({"normalizer formula", std::to_string(norm), "matched"});
  table.rows.push_back({"diagonal intersection", std::to_string(inter), "matched"});
  table.rows.push_back({"phi nilpotency", std::to_string(nilp), "certified"});
  if (format == "csv") {
    std::cout << render_csv(table);
    return 0;
  }
  std::cout << "verify " << rs.type.str() << ": " << triples.size() << " triples, " << labels
            << " labels\n"
            << render_md(table) << "all " << (lagr + norm + inter + nilp) << " checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"census and Poisson rank tables for the variety of Lagrangian subalgebras"};
  app.require_subcommand(1);

  std::string census_type, bd_type, rank_type, verify_type;
  std::string census_format = "json", bd_format = "csv", rank_format = "csv", verify_format = "md";
  bool strata = false, nilpotent = false, all_cells = false;
  int rank_cap = 0;
  int samples = 256;
  std::uint64_t seed = 0xBD;
  long oracle_cap = 1000000;
  long dim_class = -1;
  std::string rank_mode;
  std::string u_str = "e", v_str = "e", w_str = "e", v1_str = "e";
  std::string triple_str, v_witness = "diag";

  auto format_check = CLI::IsMember({"json", "csv", "md"});

  CLI::App* census = app.add_subcommand("census", "components and strata of the variety");
  census->add_option("type", census_type, "root system, like A2 or A1xA1")->required();
  census->add_flag("--strata", strata, "list every stratum, not only the components");
  census->add_option("--format", census_format, "json, csv, or md")->check(format_check);
  census->add_option("--rank-cap", rank_cap, "lift the rank guard (default 8 root system, 4 model)");

  CLI::App* bd = app.add_subcommand("bd", "generalized Belavin-Drinfeld triples");
  bd->add_option("type", bd_type, "root system")->required();
  bd->add_flag("--nilpotent", nilpotent, "keep only triples whose d-orbits all leave S");
  bd->add_option("--format", bd_format, "json, csv, or md")->check(format_check);
  bd->add_option("--rank-cap", rank_cap, "lift the rank guard");

  CLI::App* rank = app.add_subcommand("rank", "Poisson rank tables");
  rank->add_option("type", rank_type, "root system")->required();
  rank->add_option("mode", rank_mode, "flag, conj, or general")
      ->required()
      ->check(CLI::IsMember({"flag", "conj", "general"}));
  rank->add_flag("--all", all_cells, "flag mode: the full (u,v,w) grid");
  CLI::Option* opt_u = rank->add_option("--u", u_str, "flag mode: u as a word, like s1s2 or e");
  CLI::Option* opt_v = rank->add_option("--v", v_str, "cell word v");
  CLI::Option* opt_w = rank->add_option("--w", w_str, "cell word w");
  rank->add_option("--v1", v1_str, "general mode: second word of the Borel-pair orbit");
  rank->add_option("--dimC", dim_class, "conj mode: dimension of the conjugacy class");
  rank->add_option("--triple", triple_str, "general mode: triple, like \"{a1},{a1},id\"");
  rank->add_option("--V", v_witness, "general mode: center witness, diag or antidiag")
      ->check(CLI::IsMember({"diag", "antidiag"}));
  rank->add_option("--format", rank_format, "json, csv, or md")->check(format_check);
  rank->add_option("--seed", seed, "sampling seed (default 0xBD)");
  rank->add_option("--samples", samples, "sample budget per cell")->check(CLI::PositiveNumber);
  rank->add_option("--rank-cap", rank_cap, "lift the rank guard");

  CLI::App* verify = app.add_subcommand("verify", "run the exact oracle suite");
  verify->add_option("type", verify_type, "root system")->required();
  verify->add_option("--oracle-cap", oracle_cap, "bail out if more solves would be needed")
      ->check(CLI::PositiveNumber);
  verify->add_option("--format", verify_format, "json, csv, or md")->check(format_check);
  verify->add_option("--rank-cap", rank_cap, "lift the rank guard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(census)) return run_census(census_type, strata, census_format, rank_cap);
    if (app.got_subcommand(bd)) return run_bd(bd_type, nilpotent, bd_format, rank_cap);
    if (app.got_subcommand(rank)) {
      RootSystem rs = make_rs(rank_type, rank_cap);
      if (rank_mode == "flag") {
        bool have_cell = opt_u->count() || opt_v->count() || opt_w->count();
        return run_rank_flag(rs, rank_format, all_cells, have_cell, u_str, v_str, w_str, seed,
                             samples);
      }
      if (rank_mode == "conj") return run_rank_conj(rs, rank_format, dim_class);
      return run_rank_general(rs, rank_format, triple_str, v_witness, v_str, w_str, v1_str,
                              rank_cap);
    }
    return run_verify(verify_type, verify_format, rank_cap, oracle_cap);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const check_error& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << '\n';
    return 1;
  }
}
