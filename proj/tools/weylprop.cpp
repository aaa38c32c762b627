// weylprop: star products, square-zero checks, property suites and cobar
// homology tables from the command line.
//
// Exit codes: 0 ok, 1 verification failed (a witness is printed),
// 2 input error, 3 a computation hit its resource bound.

#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "weylprop/basis_cache.hpp"
#include "weylprop/errors.hpp"
#include "weylprop/homology.hpp"
#include "weylprop/opspec.hpp"
#include "weylprop/pq.hpp"
#include "weylprop/suites.hpp"

using nlohmann::json;
using namespace weylprop;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;
constexpr int kTruncated = 3;

struct Common {
  int threads = 0;
  std::string cache_dir;
  std::string format;  // empty: the command's default
  std::string output;
};

json names(const GradedBasis& basis, const std::vector<int>& entries) {
  json a = json::array();
  for (int i : entries) a.push_back(basis[static_cast<std::size_t>(i)].name);
  return a;
}

json sym_vector_json(const GradedBasis& basis, const SymVector& v) {
  json a = json::array();
  for (const auto& [m, c] : v) a.push_back({{"monomial", names(basis, m.entries)}, {"coeff", format_scalar(c)}});
  return a;
}

void emit(const Common& common, const std::string& text) {
  if (common.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(common.output, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + common.output);
  out << text;
}

std::optional<BasisCache> open_cache(const Common& common) {
  if (!common.cache_dir.empty()) return BasisCache(common.cache_dir);
  if (auto dir = cache_dir_from_env()) return BasisCache(*dir);
  return std::nullopt;
}

int cmd_star(const Common& common, const std::string& a_path, const std::string& b_path, Truncation bounds) {
  const OperatorSpec a = load_operator_spec(a_path);
  const OperatorSpec b = load_operator_spec(b_path);
  if (!(a.basis == b.basis)) throw InputError("basis mismatch between " + a_path + " and " + b_path);
  const GradedBasis& basis = a.basis;
  const WeylElement product = star(basis, a.element, b.element, bounds);
  const PQExpression coordinate = op_to_pq(basis, product);
  PQExpression oracle;
  for (const auto& [term, c] : pq_product(basis, op_to_pq(basis, a.element), op_to_pq(basis, b.element))) {
    if (term.hbar > bounds.g_max || static_cast<int>(term.p.size()) > bounds.arity_max ||
        static_cast<int>(term.q.size()) > bounds.arity_max)
      continue;
    oracle.add(term, c);
  }
  const bool agrees = coordinate == oracle;
  if (common.format == "text") {
    std::ostringstream out;
    out << format_pq(basis, coordinate) << "\n";
    out << "oracle " << (agrees ? "agrees" : "disagrees") << "\n";
    if (!agrees) out << "oracle: " << format_pq(basis, oracle) << "\n";
    emit(common, out.str());
  } else {
    json j = {{"g_max", bounds.g_max},
              {"arity_max", bounds.arity_max},
              {"product", operator_spec_json(basis, product)},
              {"normal_ordered", format_pq(basis, coordinate)},
              {"oracle_agrees", agrees}};
    if (!agrees) j["oracle_normal_ordered"] = format_pq(basis, oracle);
    emit(common, j.dump(2) + "\n");
  }
  return agrees ? kOk : kFailed;
}

int cmd_square_zero(const Common& common, const std::string& path, Truncation bounds) {
  const OperatorSpec spec = load_operator_spec(path);
  const auto verdict = square_zero_report(spec.basis, spec.element, bounds);
  json j = {{"zero", verdict.zero}, {"g_max", bounds.g_max}, {"arity_max", bounds.arity_max}};
  json comps = json::array();
  for (const auto& k : verdict.nonzero_components) comps.push_back({{"g", k.g}, {"in", k.in}, {"out", k.out}});
  j["nonzero_components"] = comps;
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    j["witness"] = {{"g", w.component.g},
                    {"in", w.component.in},
                    {"out", w.component.out},
                    {"input", names(spec.basis, w.input.entries)},
                    {"output", sym_vector_json(spec.basis, w.output)}};
  }
  if (common.format == "text") {
    std::ostringstream out;
    out << (verdict.zero ? "H*H = 0" : "H*H != 0") << " within g <= " << bounds.g_max << ", arity <= "
        << bounds.arity_max << "\n";
    if (verdict.witness) out << "witness: " << j["witness"].dump() << "\n";
    emit(common, out.str());
  } else {
    j["square"] = operator_spec_json(spec.basis, verdict.square);
    emit(common, j.dump(2) + "\n");
  }
  return verdict.zero ? kOk : kFailed;
}

int cmd_relations(const Common& common, const std::string& path, Truncation bounds) {
  const FamilySpec spec = load_family_spec(path);
  const auto verdict = check_relations(spec.basis, spec.family, bounds);
  json j = {{"zero", verdict.zero}, {"g_max", bounds.g_max}, {"arity_max", bounds.arity_max}};
  json keys = json::array();
  for (const auto& k : verdict.nonzero) keys.push_back({{"r", k.r}, {"t", k.t}, {"g", k.g}});
  j["nonzero_relations"] = keys;
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    json out = json::array();
    for (const auto& [word, c] : w.output) out.push_back({{"word", names(spec.basis, word.entries)}, {"coeff", format_scalar(c)}});
    j["witness"] = {{"r", w.key.r}, {"t", w.key.t}, {"g", w.key.g}, {"input", names(spec.basis, w.input.entries)},
                    {"output", out}};
  }
  emit(common, j.dump(2) + "\n");
  return verdict.zero ? kOk : kFailed;
}

struct VerifyArgs {
  std::string suite;
  int m_max = 4;
  int n_max = 4;
  int g_max = 2;
  int rt_max = 6;
  int p_max = 3;
  int arity_max = 3;
  int count = 64;
  int dim_max = 3;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_verify(const Common& common, const VerifyArgs& a) {
  SuiteReport report;
  if (a.suite == "coassoc") {
    report = coassoc_suite(a.m_max, a.n_max, a.g_max);
  } else if (a.suite == "dsq") {
    report = dsq_suite(a.rt_max, a.g_max, a.p_max);
  } else if (a.suite == "compare-circk") {
    report = compare_circk_suite(a.arity_max);
  } else if (a.suite == "theorem") {
    report = theorem_suite(a.count, a.seed, a.dim_max, Truncation{a.g_max, a.arity_max});
  } else if (a.suite == "star-oracle") {
    report = star_oracle_suite(a.count, a.seed);
  } else if (a.suite == "lemmas") {
    report = lemma_suite(4);
  } else {
    throw InputError("unknown suite \"" + a.suite + "\"");
  }
  std::ostringstream out;
  if (common.format == "json") {
    json cases = json::array();
    for (const auto& c : report.cases) cases.push_back({{"case", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    out << json{{"suite", report.suite}, {"passed", report.passed()}, {"failures", report.failures()}, {"cases", cases}}
               .dump(2)
        << "\n";
  } else {
    for (const auto& c : report.cases) {
      out << (c.pass ? "PASS " : "FAIL ") << c.name;
      if (!c.detail.empty()) out << "  [" << c.detail << "]";
      out << "\n";
    }
    out << report.suite << ": " << report.cases.size() - report.failures() << "/" << report.cases.size() << " passed\n";
  }
  emit(common, out.str());
  return report.passed() ? kOk : kFailed;
}

struct HomologyArgs {
  std::optional<int> r, t, g;
  int grid = 0;
  int box = 0;
  int g_max = 2;
  int p_max = 0;
  std::size_t max_basis = 20'000'000;
  std::size_t exact_nonzeros = RankOptions{}.exact_nonzeros;
  bool allow_truncated = false;
};

int cmd_homology(const Common& common, const HomologyArgs& a) {
  std::vector<CellKey> cells;
  if (a.r || a.t || a.g) {
    if (!(a.r && a.t && a.g)) throw InputError("--r, --t and --g go together");
    if (*a.r < 1 || *a.t < 1 || *a.g < 0) throw InputError("a cell needs r, t >= 1 and g >= 0");
    cells.push_back({*a.r, *a.t, *a.g});
  } else if (a.grid > 0 || a.box > 0) {
    cells = grid_cells(a.grid, a.box, a.g_max);
  } else {
    throw InputError("give a cell (--r --t --g), --grid or --box");
  }
  const auto cache = open_cache(common);
  const BasisCache* cache_ptr = cache ? &*cache : nullptr;
  BuildLimits limits;
  limits.p_max = a.p_max;
  limits.max_basis = a.max_basis;
  RankOptions options;
  options.exact_nonzeros = a.exact_nonzeros;
  const HomologyTable table = homology_table(cells, limits, cache_ptr, options);

  // Relation classes whose cells the table covers.
  json relations = json::array();
  bool relations_ok = true;
  std::ostringstream relation_csv;
  for (const auto& name : relation_names()) {
    const CellKey key = relation_cell(name);
    if (std::find(cells.begin(), cells.end(), key) == cells.end()) continue;
    const ChainCell cell = build_complex(key.r, key.t, key.g, limits, cache_ptr);
    if (cell.truncated) continue;
    const GraphVector x = relation_class(name);
    const bool cycle = is_cycle(x, cell);
    const bool boundary = is_boundary(x, cell);
    relations_ok = relations_ok && boundary;
    relations.push_back({{"relation", name}, {"r", key.r}, {"t", key.t}, {"g", key.g}, {"cycle", cycle},
                         {"boundary", boundary}});
    relation_csv << name << ',' << key.r << ',' << key.t << ',' << key.g << ',' << (cycle ? "true" : "false") << ','
                 << (boundary ? "true" : "false") << "\n";
  }

  bool truncated = false;
  for (const auto& row : table.rows) truncated = truncated || !row.complete;
  if (common.format == "csv") {
    std::string text = table_csv(table);
    if (!relations.empty()) text += "\nrelation,r,t,g,cycle,boundary\n" + relation_csv.str();
    emit(common, text);
  } else {
    json j = table_json(table);
    j["relations"] = relations;
    emit(common, j.dump(2) + "\n");
  }
  if (truncated && !a.allow_truncated) {
    std::cerr << "weylprop: table has truncated cells; pass --allow-truncated to accept them\n";
    return kTruncated;
  }
  return relations_ok ? kOk : kFailed;
}

int cmd_basis(const Common& common, int r, int t, int g, int p) {
  const auto cache = open_cache(common);
  const BasisLevel level = cached_level(r, t, g, p, cache ? &*cache : nullptr);
  emit(common, BasisCache::serialize(r, t, g, p, level));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl-algebra star products and the cobar complex of coFrob"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--cache-dir", common.cache_dir, "basis cache directory (overrides WEYLPROP_CACHE_DIR)");
  app.add_option("-o,--output", common.output, "write the result here instead of stdout");

  Truncation bounds;
  std::string a_path;
  std::string b_path;
  auto* star_cmd = app.add_subcommand("star", "star product of two operator specs, checked against the p-q product");
  star_cmd->add_option("a", a_path, "left operator spec")->required()->check(CLI::ExistingFile);
  star_cmd->add_option("b", b_path, "right operator spec")->required()->check(CLI::ExistingFile);
  star_cmd->add_option("--gmax", bounds.g_max, "highest hbar power kept")->check(CLI::NonNegativeNumber);
  star_cmd->add_option("--aritymax", bounds.arity_max, "highest arity kept")->check(CLI::PositiveNumber);
  star_cmd->add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string h_path;
  auto* sz_cmd = app.add_subcommand("square-zero", "decide H*H = 0 within bounds");
  sz_cmd->add_option("spec", h_path, "operator spec of H")->required()->check(CLI::ExistingFile);
  sz_cmd->add_option("--gmax", bounds.g_max)->check(CLI::NonNegativeNumber);
  sz_cmd->add_option("--aritymax", bounds.arity_max)->check(CLI::PositiveNumber);
  sz_cmd->add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string f_path;
  auto* rel_cmd = app.add_subcommand("relations", "check the properadic relations of a structure family");
  rel_cmd->add_option("spec", f_path, "family spec")->required()->check(CLI::ExistingFile);
  rel_cmd->add_option("--gmax", bounds.g_max)->check(CLI::NonNegativeNumber);
  rel_cmd->add_option("--aritymax", bounds.arity_max)->check(CLI::PositiveNumber);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "run a property suite");
  verify_cmd->add_option("--suite", verify.suite)
      ->required()
      ->check(CLI::IsMember({"coassoc", "dsq", "compare-circk", "theorem", "star-oracle", "lemmas"}));
  verify_cmd->add_option("--mmax", verify.m_max, "coassoc: input arity bound")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--nmax", verify.n_max, "coassoc: output arity bound")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--gmax", verify.g_max, "genus bound")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--rtmax", verify.rt_max, "dsq: bound on r + t")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--pmax", verify.p_max, "dsq: vertex bound for basis graphs")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--aritymax", verify.arity_max, "compare-circk, theorem: arity bound")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--count", verify.count, "theorem, star-oracle: number of random cases")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--dimv", verify.dim_max, "theorem: largest dim V")->check(CLI::Range(1, 3));
  verify_cmd->add_option("--seed", verify.seed, "seed for the randomized suites");
  verify_cmd->add_option("--format", common.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  HomologyArgs hom;
  int r = 0;
  int t = 0;
  int g = 0;
  auto* hom_cmd = app.add_subcommand("homology", "Betti numbers and Euler characteristics of cobar cells");
  auto* r_opt = hom_cmd->add_option("--r", r, "inputs of a single cell")->check(CLI::PositiveNumber);
  auto* t_opt = hom_cmd->add_option("--t", t, "outputs of a single cell")->check(CLI::PositiveNumber);
  auto* g_opt = hom_cmd->add_option("--g", g, "genus of a single cell")->check(CLI::NonNegativeNumber);
  hom_cmd->add_option("--grid", hom.grid, "all cells with r + t <= N")->check(CLI::PositiveNumber);
  hom_cmd->add_option("--box", hom.box, "all cells with r, t <= M")->check(CLI::PositiveNumber);
  hom_cmd->add_option("--gmax", hom.g_max, "genus bound for --grid and --box")->check(CLI::NonNegativeNumber);
  hom_cmd->add_option("--pmax", hom.p_max, "stop after this many vertices (0: no bound)")
      ->check(CLI::NonNegativeNumber);
  hom_cmd->add_option("--max-basis", hom.max_basis, "largest basis allowed in one degree")
      ->check(CLI::PositiveNumber);
  hom_cmd->add_option("--exact-nnz", hom.exact_nonzeros, "boundaries up to this size are always eliminated exactly");
  hom_cmd->add_flag("--allow-truncated", hom.allow_truncated, "accept truncated cells (exit 0)");
  hom_cmd->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  int bp = 1;
  auto* basis_cmd = app.add_subcommand("basis", "canonical basis graphs of one cell and vertex count");
  basis_cmd->add_option("--r", r)->required()->check(CLI::PositiveNumber);
  basis_cmd->add_option("--t", t)->required()->check(CLI::PositiveNumber);
  basis_cmd->add_option("--g", g)->required()->check(CLI::NonNegativeNumber);
  basis_cmd->add_option("--p", bp)->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (common.threads > 0) omp_set_num_threads(common.threads);
  if (common.format.empty()) common.format = *hom_cmd ? "csv" : (*verify_cmd ? "text" : "json");

  try {
    if (*star_cmd) return cmd_star(common, a_path, b_path, bounds);
    if (*sz_cmd) return cmd_square_zero(common, h_path, bounds);
    if (*rel_cmd) return cmd_relations(common, f_path, bounds);
    if (*verify_cmd) return cmd_verify(common, verify);
    if (*hom_cmd) {
      if (r_opt->count()) hom.r = r;
      if (t_opt->count()) hom.t = t;
      if (g_opt->count()) hom.g = g;
      return cmd_homology(common, hom);
    }
    if (*basis_cmd) return cmd_basis(common, r, t, g, bp);
  } catch (const UnreducedError& e) {
    std::cerr << "weylprop: unreduced input: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "weylprop: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionError& e) {
    std::cerr << "weylprop: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "weylprop: " << e.what() << "\n";
    return kInputError;
  } catch (const TruncatedError& e) {
    std::cerr << "weylprop: " << e.what() << "\n";
    return kTruncated;
  } catch (const BudgetExhausted& e) {
    std::cerr << "weylprop: " << e.what() << "\n";
    return kTruncated;
  } catch (const std::exception& e) {
    std::cerr << "weylprop: " << e.what() << "\n";
    return kFailed;
  }
  return kOk;
}
