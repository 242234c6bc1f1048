// spmono: command-line front end for the monodromy group computations.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>
#include <thread>

#include "spmono/catalog.hpp"
#include "spmono/coset_enum.hpp"
#include "spmono/fpgroup.hpp"
#include "spmono/geometry_f2.hpp"
#include "spmono/modgroup.hpp"
#include "spmono/reproduce.hpp"

using nlohmann::json;
using namespace spmono;

namespace {

enum Exit { ok = 0, usage = 2, budget_exceeded = 3, invariant = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int aesz = 0;
  std::string dk;
  long n = 0;
  std::string range;
  std::uint64_t budget = coset::Options{}.budget;
  std::string strategy = "felsch";
  std::string format = "text";
  bool long_run = false;
  unsigned jobs = 1;
  bool extra = false;
  bool no_extra = false;
  bool all = false;
  std::string kind = "pentads";
  std::string matrix;
  long d1 = 0;
  long d2 = 0;
  std::string catalog_path = default_catalog_path();
};

std::pair<long, long> parse_pair(const std::string& s, const char* what) {
  long a = 0, b = 0;
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> a >> comma >> b) || comma != ',' || !is.eof())
    throw UsageError(std::string("--") + what + " expects two integers separated by a comma");
  return {a, b};
}

std::vector<long> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw UsageError("--range expects LO..HI");
  long lo = 0, hi = 0;
  try {
    lo = std::stol(s.substr(0, dots));
    hi = std::stol(s.substr(dots + 2));
  } catch (const std::exception&) {
    throw UsageError("--range expects LO..HI");
  }
  if (lo < 2 || hi < lo) throw UsageError("--range needs 2 <= LO <= HI");
  std::vector<long> out;
  for (long n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

const OperatorRecord& select_record(const std::vector<OperatorRecord>& cat, const Config& c) {
  if (c.aesz && !c.dk.empty()) throw UsageError("give either --aesz or --dk, not both");
  if (c.aesz) {
    if (const auto* r = find_by_aesz(cat, c.aesz)) return *r;
    throw UsageError("unknown AESZ id " + std::to_string(c.aesz));
  }
  if (!c.dk.empty()) {
    const auto [d, k] = parse_pair(c.dk, "dk");
    if (const auto* r = find_by_dk(cat, d, k)) return *r;
    throw UsageError("no catalog record with (d,k) = (" + std::to_string(d) + "," + std::to_string(k) + ")");
  }
  throw UsageError("a case selector --aesz or --dk is required");
}

std::vector<const OperatorRecord*> hypergeometric_columns(const std::vector<OperatorRecord>& cat) {
  std::vector<const OperatorRecord*> cols;
  for (const auto& r : cat)
    if (r.kind == OperatorKind::hypergeometric) cols.push_back(&r);
  return cols;
}

// Conifold records carry their extra generator unless --no-extra is given.
bool use_extra(const OperatorRecord& r, const Config& c) {
  if (c.extra && c.no_extra) throw UsageError("--extra and --no-extra are exclusive");
  if (c.no_extra) return false;
  return c.extra || r.kind == OperatorKind::conifold;
}

int cmd_catalog(const Config& c) {
  const auto cat = load_catalog(c.catalog_path);
  std::vector<const OperatorRecord*> rows;
  if (c.aesz || !c.dk.empty())
    rows.push_back(&select_record(cat, c));
  else
    for (const auto& r : cat) rows.push_back(&r);
  if (c.format == "json") {
    json j = json::array();
    for (const auto* r : rows) j.push_back(record_to_json(*r));
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "aesz,kind,d,k,c2H,c3,n1,discriminant,lambda,gamma_index\n";
    for (const auto* r : rows) {
      std::cout << r->aesz << "," << (r->kind == OperatorKind::hypergeometric ? "hypergeometric" : "conifold") << ","
                << r->d << "," << r->k << "," << r->c2H << "," << r->c3 << "," << (r->n1 ? std::to_string(*r->n1) : "")
                << "," << (r->discriminant ? r->discriminant->get_str() : "") << ","
                << lambda_classifier(r->d, r->k).lambda.get_str() << ","
                << gamma_index(r->d, std::gcd(r->d, r->k)).get_str() << "\n";
    }
  } else {
    for (const auto* r : rows) {
      std::cout << r->label() << "  d=" << r->d << " k=" << r->k << " c2H=" << r->c2H << " c3=" << r->c3;
      if (r->n1) std::cout << " n1=" << *r->n1;
      if (r->discriminant) std::cout << " N=" << r->discriminant->get_str();
      if (!r->alphas.empty()) {
        std::cout << " alphas=";
        for (std::size_t i = 0; i < r->alphas.size(); ++i) std::cout << (i ? "," : "") << r->alphas[i].str();
      }
      if (!r->extra_generators.empty()) std::cout << " extra=" << r->extra_generators.size();
      std::cout << "\n";
    }
    std::cout << rows.size() << " record(s), all validated\n";
  }
  return ok;
}

int cmd_generators(const Config& c) {
  const auto cat = load_catalog(c.catalog_path);
  const auto& r = select_record(cat, c);
  const auto g = integral_generators(r.d, r.k);
  const auto w = monodromy_words(r.d, r.k);
  const bool g1_ok = evaluate(w.g1) == g.N;
  const bool g2_ok = evaluate(w.g2) == g.M;
  const bool sympl = is_symplectic(g.M, standard_form()) && is_symplectic(g.N, standard_form());
  if (c.format == "json") {
    json j = {{"case", r.label()},
              {"M", matrix_to_json(g.M)},
              {"N", matrix_to_json(g.N)},
              {"g1", word_to_json(w.g1)},
              {"g2", word_to_json(w.g2)},
              {"g1_evaluates_to_N", g1_ok},
              {"g2_evaluates_to_M", g2_ok},
              {"symplectic", sympl},
              {"gamma", {{"d1", r.d}, {"d2", std::gcd(r.d, r.k)}}}};
    j["extra"] = json::array();
    for (const auto& m : r.extra_generators) j["extra"].push_back(matrix_to_json(m));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << r.label() << "\nM =\n" << g.M.str() << "\nN =\n" << g.N.str() << "\n";
    for (const auto& m : r.extra_generators) std::cout << "extra =\n" << m.str() << "\n";
    std::cout << "g1 = " << w.g1.str() << "\ng2 = " << w.g2.str() << "\n";
    std::cout << "g1 -> N: " << (g1_ok ? "ok" : "MISMATCH") << ", g2 -> M: " << (g2_ok ? "ok" : "MISMATCH")
              << ", symplectic: " << (sympl ? "yes" : "no") << "\n";
  }
  return g1_ok && g2_ok && sympl ? ok : invariant;
}

int cmd_index(const Config& c) {
  const auto cat = load_catalog(c.catalog_path);
  const auto& r = select_record(cat, c);
  const bool extra = use_extra(r, c);
  coset::Options opt;
  opt.budget = c.budget;
  opt.strategy = coset::strategy_from_string(c.strategy);
  if (const auto heavy = heavy_case(r, extra)) {
    std::cerr << heavy->what << ": " << heavy->expected_cosets << " cosets or more, " << heavy->memory << "\n";
    if (!c.long_run) {
      std::cerr << "this enumeration is long-running; rerun with --long\n";
      return usage;
    }
    opt.budget = std::max(opt.budget, heavy->budget);
  }
  const auto run = run_index(r, extra, opt);
  if (c.format == "json") {
    auto j = run.to_json();
    j["case"] = r.label();
    j["extra_generators"] = extra;
    std::cout << j.dump(2) << "\n";
  } else if (run.enumeration.completed) {
    std::cout << run.enumeration.index << "\n";
  } else {
    std::cout << "budget exceeded after " << run.enumeration.stats.defined << " cosets (max live "
              << run.enumeration.stats.max_live << ")\n";
    if (run.lower_bound) {
      std::cout << "lower bound " << run.lower_bound->get_str() << " from";
      for (const auto& [n, idx] : run.local_indices) std::cout << " mod " << n << ": " << idx.get_str();
      std::cout << "\n";
    }
  }
  return run.enumeration.completed ? ok : budget_exceeded;
}

int cmd_modn(const Config& c) {
  const auto cat = load_catalog(c.catalog_path);
  std::vector<long> moduli;
  if (!c.range.empty()) moduli = parse_range(c.range);
  if (c.n) moduli.push_back(c.n);
  if (moduli.empty()) moduli = parse_range("2..9");
  for (long n : moduli) {
    if (n < 2) throw UsageError("--n must be at least 2");
    if (n > kModulusFeasibilityCap && !c.long_run)
      throw UsageError("modulus " + std::to_string(n) + " is beyond " + std::to_string(kModulusFeasibilityCap) +
                       "; rerun with --long");
  }
  std::vector<const OperatorRecord*> cols;
  if (c.all)
    cols = hypergeometric_columns(cat);
  else
    cols.push_back(&select_record(cat, c));
  const bool extra = c.extra && !c.no_extra;
  const auto cells = mod_table(cols, moduli, std::max(1u, c.jobs), extra);
  if (c.format == "json") {
    std::cout << mod_table_json(cells).dump(2) << "\n";
  } else if (c.format == "csv" || cols.size() > 1) {
    std::cout << mod_table_csv(cols, moduli, cells);
  } else if (cells.size() == 1) {
    std::cout << cells.front().value.index.get_str() << "\n";
  } else {
    for (const auto& cell : cells) std::cout << cell.value.modulus << " " << cell.value.index.get_str() << "\n";
  }
  return ok;
}

template <std::size_t K>
json perm_json(const std::array<int, K>& p) {
  return json(std::vector<int>(p.begin(), p.end()));
}

int cmd_geometry(const Config& c) {
  using namespace spmono::f2;
  const auto cat = load_catalog(c.catalog_path);
  json j;
  std::ostringstream text;
  int status = ok;
  if (c.kind == "pentads") {
    j = json::array();
    for (const auto& p : enumerate_pentads()) {
      j.push_back({{"number", p.number}, {"points", set_str(p.points)}});
      text << p.number << " = " << set_str(p.points) << "\n";
    }
  } else if (c.kind == "synthemes") {
    j = json::array();
    for (const auto& s : enumerate_synthemes()) {
      j.push_back({{"number", roman(s.number)}, {"triples", {set_str(s.triples[0]), set_str(s.triples[1])}}});
      text << roman(s.number) << " = {" << set_str(s.triples[0]) << "," << set_str(s.triples[1]) << "}\n";
    }
  } else if (c.kind == "line-pentads") {
    j = json::array();
    for (const auto& lp : enumerate_line_pentads()) {
      json lines = json::array();
      text << lp.number << "' = {";
      for (int i = 0; i < 5; ++i) {
        lines.push_back(set_str(lp.lines[i]));
        text << (i ? "," : "") << set_str(lp.lines[i]);
      }
      text << "}\n";
      j.push_back({{"number", std::to_string(lp.number) + "'"}, {"lines", lines}});
    }
  } else if (c.kind == "actions") {
    const auto& r = select_record(cat, c);
    const auto g = integral_generators(r.d, r.k);
    const auto M = mod_reduce(g.M, 2), N = mod_reduce(g.N, 2);
    j = {{"case", r.label()},
         {"M", {{"pentads", perm_json(permutation_image(M))},
                {"synthemes", perm_json(syntheme_permutation(M))},
                {"line_pentads", perm_json(line_pentad_permutation(M))}}},
         {"N", {{"pentads", perm_json(permutation_image(N))},
                {"synthemes", perm_json(syntheme_permutation(N))},
                {"line_pentads", perm_json(line_pentad_permutation(N))}}}};
    for (const auto& [name, m] : {std::pair{"M", M}, std::pair{"N", N}}) {
      text << name << ": pentads " << cycles(permutation_image(m)) << ", synthemes "
           << cycles(syntheme_permutation(m), true) << ", line pentads " << cycles(line_pentad_permutation(m))
           << "\n";
    }
    const auto fp = fixed_objects({M, N}, ObjectKind::pentad);
    const auto fs = fixed_objects({M, N}, ObjectKind::syntheme);
    text << "fixed pentads:";
    for (int n : fp) text << " " << n;
    text << "\nfixed synthemes:";
    for (int n : fs) text << " " << roman(n);
    text << "\n";
    j["fixed_pentads"] = fp;
    j["fixed_synthemes"] = json::array();
    for (int n : fs) j["fixed_synthemes"].push_back(roman(n));
  } else if (c.kind == "theorem4") {
    j = json::array();
    for (const auto& [d, k] : {std::pair{1L, 3L}, std::pair{1L, 2L}}) {
      const auto* r = find_by_dk(cat, d, k);
      const auto g = integral_generators(d, k);
      coset::Options opt;
      opt.budget = c.budget;
      opt.strategy = coset::strategy_from_string(c.strategy);
      const auto e = coset::enumerate(behr_presentation(), subgroup_words(*r, false), opt);
      const auto rep = verify_theorem4(d, k, {mod_reduce(g.M, 2), mod_reduce(g.N, 2)},
                                       e.completed ? std::optional<std::uint64_t>(e.index) : std::nullopt);
      j.push_back(rep.to_json());
      text << rep.text();
      if (!rep.passed()) status = invariant;
    }
  } else {
    throw UsageError("--kind must be pentads, synthemes, line-pentads, actions or theorem4");
  }
  std::cout << (c.format == "json" ? j.dump(2) + "\n" : text.str());
  return status;
}

int cmd_classify(const Config& c) {
  const auto rows = plot_data(load_catalog(c.catalog_path));
  if (c.format == "json") {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"aesz", r.aesz},
                   {"d", r.d},
                   {"k", r.k},
                   {"lambda", r.lambda.get_str()},
                   {"predicted", to_string(r.predicted)},
                   {"status", to_string(r.status)}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "aesz,d,k,lambda,predicted,status\n";
    for (const auto& r : rows)
      std::cout << r.aesz << "," << r.d << "," << r.k << "," << r.lambda.get_str() << "," << to_string(r.predicted)
                << "," << to_string(r.status) << "\n";
  }
  return ok;
}

int cmd_gamma(const Config& c) {
  long d1 = c.d1, d2 = c.d2;
  std::optional<IntegralGenerators> gens;
  std::string label;
  if (c.aesz || !c.dk.empty()) {
    const auto cat = load_catalog(c.catalog_path);
    const auto& r = select_record(cat, c);
    d1 = r.d;
    d2 = std::gcd(r.d, r.k);
    gens = integral_generators(r.d, r.k);
    label = r.label();
  }
  if (d1 < 1 || d2 < 1) throw UsageError("gamma needs --d1/--d2 or a case selector");
  if (d1 % d2 != 0) throw UsageError("--d2 must divide --d1");
  const auto idx = gamma_index(d1, d2);
  json j = {{"d1", d1}, {"d2", d2}, {"index", idx.get_str()}};
  bool member = true;
  if (gens) {
    member = gamma_membership(gens->M, d1, d2) && gamma_membership(gens->N, d1, d2);
    j["case"] = label;
    j["generators_in_gamma"] = member;
  }
  if (c.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << idx.get_str() << (gens ? std::string(member ? "" : "  (generators NOT in Gamma)") : "") << "\n";
  return member ? ok : invariant;
}

int cmd_decompose(const Config& c) {
  ExactMatrix4 m;
  if (!c.matrix.empty()) {
    try {
      m = parse_matrix_literal(c.matrix);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("malformed matrix literal: ") + e.what());
    }
  } else {
    const auto cat = load_catalog(c.catalog_path);
    const auto& r = select_record(cat, c);
    if (r.extra_generators.empty()) throw UsageError(r.label() + " has no extra generator; pass --matrix");
    m = r.extra_generators.front();
  }
  if (!m.is_integral() || !is_symplectic(m, standard_form()))
    throw UsageError("matrix is not integral symplectic");
  const auto w = decompose(m);
  if (!(evaluate(w) == m)) throw InvariantError("decomposition does not evaluate back to the matrix");
  if (c.format == "json")
    std::cout << json{{"word", word_to_json(w)}, {"length", w.length()}}.dump(2) << "\n";
  else
    std::cout << (w.empty() ? "(empty word)" : w.str()) << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monodromy groups of Calabi-Yau operators in Sp4(Z)"};
  app.require_subcommand(1);
  Config c;
  app.add_option("--catalog", c.catalog_path, "catalog JSON file");

  auto selector = [&](CLI::App* sub) {
    sub->add_option("--aesz", c.aesz, "AESZ catalog number");
    sub->add_option("--dk", c.dk, "case as d,k");
  };
  auto format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(allowed));
  };
  auto enumeration = [&](CLI::App* sub) {
    sub->add_option("--budget", c.budget, "maximum coset rows held at once")->check(CLI::PositiveNumber);
    sub->add_option("--strategy", c.strategy, "hlt or felsch")->check(CLI::IsMember({"hlt", "felsch"}));
  };

  auto* catalog = app.add_subcommand("catalog", "list and validate the catalog");
  selector(catalog);
  format(catalog, {"text", "json", "csv"});

  auto* generators = app.add_subcommand("generators", "monodromy matrices and their Behr words");
  selector(generators);
  format(generators, {"text", "json"});

  auto* index = app.add_subcommand("index", "index in Sp4(Z) by coset enumeration");
  selector(index);
  enumeration(index);
  format(index, {"text", "json"});
  index->add_flag("--extra", c.extra, "add the extra generators");
  index->add_flag("--no-extra", c.no_extra, "drop the extra generators of a conifold record");
  index->add_flag("--long", c.long_run, "allow long-running enumerations");

  auto* modn = app.add_subcommand("modn", "index of the image in Sp4(Z/N)");
  selector(modn);
  modn->add_option("--n", c.n, "modulus");
  modn->add_option("--range", c.range, "moduli LO..HI");
  modn->add_flag("--all", c.all, "all hypergeometric cases as table columns");
  modn->add_flag("--extra", c.extra, "add the extra generators");
  modn->add_flag("--long", c.long_run, "allow moduli beyond the feasibility cap");
  modn->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  format(modn, {"text", "json", "csv"});

  auto* geometry = app.add_subcommand("geometry", "finite symplectic geometry mod 2");
  selector(geometry);
  enumeration(geometry);
  geometry->add_option("--kind", c.kind, "pentads, synthemes, line-pentads, actions or theorem4");
  format(geometry, {"text", "json"});

  auto* classify = app.add_subcommand("classify", "Lambda plot data for the hypergeometric cases");
  format(classify, {"csv", "json"});

  auto* gamma = app.add_subcommand("gamma", "index of Gamma(d1,d2) and membership of M, N");
  selector(gamma);
  gamma->add_option("--d1", c.d1);
  gamma->add_option("--d2", c.d2);
  format(gamma, {"text", "json"});

  auto* decomp = app.add_subcommand("decompose", "write a symplectic matrix as a Behr word");
  selector(decomp);
  decomp->add_option("--matrix", c.matrix, "JSON matrix literal, rows first");
  format(decomp, {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }
  if (classify->parsed() && c.format == "text") c.format = "csv";

  try {
    if (catalog->parsed()) return cmd_catalog(c);
    if (generators->parsed()) return cmd_generators(c);
    if (index->parsed()) return cmd_index(c);
    if (modn->parsed()) return cmd_modn(c);
    if (geometry->parsed()) return cmd_geometry(c);
    if (classify->parsed()) return cmd_classify(c);
    if (gamma->parsed()) return cmd_gamma(c);
    if (decomp->parsed()) return cmd_decompose(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return invariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return invariant;
  }
  return usage;
}
