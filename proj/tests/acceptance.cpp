// Acceptance run: one PASS/FAIL line per criterion. Each criterion runs in its
// own child process under a memory limit, so a criterion that runs out of
// memory fails on its own line instead of taking the others down.

#include <omp.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weylprop/homology.hpp"
#include "weylprop/suites.hpp"

using namespace weylprop;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Settings {
  fs::path out_dir = "reference";
  int alt_threads = 2;
  std::size_t box_max_basis = 1'000'000;
  std::size_t memory_mb = 5600;
  std::uint64_t seed = kDefaultSeed;
};

Outcome from_suite(const SuiteReport& r) {
  std::ostringstream d;
  d << r.cases.size() - r.failures() << "/" << r.cases.size() << " cases pass";
  std::size_t shown = 0;
  for (const auto& c : r.cases) {
    if (c.pass || shown == 3) continue;
    d << "; " << c.name << ": " << c.detail;
    ++shown;
  }
  return {r.passed() && !r.cases.empty(), d.str()};
}

std::string key_name(const CellKey& k) {
  return "(" + std::to_string(k.r) + "," + std::to_string(k.t) + "," + std::to_string(k.g) + ")";
}

Outcome criterion7() {
  std::vector<std::string> bad;
  for (CellKey k : {CellKey{2, 1, 0}, CellKey{1, 2, 0}}) {
    const auto row = betti(build_complex(k.r, k.t, k.g));
    if (row.betti.empty() || row.betti[0] != 1) bad.push_back("Betti" + key_name(k) + " at degree -1 is not 1");
  }
  for (const auto& name : relation_names()) {
    const auto key = relation_cell(name);
    const auto cell = build_complex(key.r, key.t, key.g);
    const auto x = relation_class(name);
    if (x.empty() || !is_cycle(x, cell) || !is_boundary(x, cell)) bad.push_back(name + " is not a boundary");
  }
  const auto row = betti(build_complex(1, 1, 1));
  for (long b : row.betti)
    if (b != 0) bad.push_back("Betti(1,1,1) is nonzero");
  std::ostringstream d;
  if (bad.empty()) {
    d << "[mu], [Delta] nonzero; jacobi, cojacobi, five_term, involutivity are boundaries; (1,1,1) acyclic";
  } else {
    for (const auto& b : bad) d << b << "; ";
  }
  return {bad.empty(), d.str()};
}

// Euler characteristic from the chain dimensions, recomputed here.
long chain_euler(const BettiRow& row) {
  long chi = 0;
  for (std::size_t i = 0; i < row.dims.size(); ++i) chi += (i % 2 == 0 ? -1L : 1L) * static_cast<long>(row.dims[i]);
  return chi;
}

long betti_euler(const BettiRow& row) {
  long chi = 0;
  for (std::size_t i = 0; i < row.betti.size(); ++i) chi += (i % 2 == 0 ? -1L : 1L) * row.betti[i];
  return chi;
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

Outcome criterion8(const Settings& s) {
  const auto cells = grid_cells(0, 4, 2);
  BuildLimits limits;
  limits.max_basis = s.box_max_basis;
  omp_set_num_threads(1);
  const auto one = homology_table(cells, limits, nullptr);
  omp_set_num_threads(s.alt_threads);
  const auto alt = homology_table(cells, limits, nullptr);
  const std::string csv1 = table_csv(one);
  const std::string csv2 = table_csv(alt);
  const std::string json1 = table_json(one).dump(1);
  const std::string json2 = table_json(alt).dump(1);
  write_file(s.out_dir / "homology_box4_g2.csv", csv1);
  write_file(s.out_dir / "homology_box4_g2.json", json1 + "\n");

  std::size_t complete = 0;
  std::vector<std::string> truncated;
  std::vector<std::string> bad;
  for (const auto& row : one.rows) {
    if (!row.complete) {
      truncated.push_back(key_name(row.key));
      continue;
    }
    ++complete;
    const long c = chain_euler(row);
    if (c != row.euler_chains || c != betti_euler(row) || c != row.euler_betti) bad.push_back(key_name(row.key));
  }
  std::ostringstream d;
  d << complete << "/" << one.rows.size() << " cells complete, Euler characteristics agree on "
    << complete - bad.size() << "; tables at 1 and " << s.alt_threads << " threads "
    << (csv1 == csv2 && json1 == json2 ? "byte-identical" : "DIFFER");
  if (!truncated.empty()) {
    d << "; truncated at " << s.box_max_basis << " classes per degree:";
    for (const auto& t : truncated) d << ' ' << t;
  }
  for (const auto& b : bad) d << "; Euler mismatch at " << b;
  return {bad.empty() && csv1 == csv2 && json1 == json2 && complete > 0, d.str()};
}

Outcome criterion9(const Settings& s) {
  const auto cells = grid_cells(6, 0, 2);
  const auto table = homology_table(cells, {}, nullptr);
  auto doc = table_json(table);
  // The relation verdicts ride along with the table.
  nlohmann::json relations = nlohmann::json::array();
  for (const auto& name : relation_names()) {
    const auto key = relation_cell(name);
    const auto cell = build_complex(key.r, key.t, key.g);
    const auto x = relation_class(name);
    relations.push_back({{"relation", name},
                         {"r", key.r},
                         {"t", key.t},
                         {"g", key.g},
                         {"cycle", is_cycle(x, cell)},
                         {"boundary", is_boundary(x, cell)}});
  }
  doc["relations"] = relations;
  write_file(s.out_dir / "homology_rt6_g2.csv", table_csv(table));
  write_file(s.out_dir / "homology_rt6_g2.json", doc.dump(1) + "\n");
  std::vector<std::string> truncated;
  long euler_bad = 0;
  for (const auto& row : table.rows) {
    if (!row.complete) truncated.push_back(key_name(row.key));
    else if (chain_euler(row) != betti_euler(row)) ++euler_bad;
  }
  std::ostringstream d;
  d << table.rows.size() - truncated.size() << "/" << table.rows.size() << " cells complete";
  for (const auto& t : truncated) d << ' ' << t;
  d << "; table written to " << (s.out_dir / "homology_rt6_g2.csv").string();
  if (euler_bad) d << "; " << euler_bad << " Euler mismatches";
  return {truncated.empty() && euler_bad == 0, d.str()};
}

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome()> run;
};

// Runs fn in a child process with an address-space limit; the result comes back through a pipe.
Outcome isolated(const std::function<Outcome()>& fn, std::size_t memory_mb) {
  int fds[2];
  if (pipe(fds) != 0) return {false, "pipe failed"};
  std::cout.flush();
  const pid_t pid = fork();
  if (pid < 0) return {false, "fork failed"};
  if (pid == 0) {
    close(fds[0]);
    rlimit lim{};
    lim.rlim_cur = lim.rlim_max = static_cast<rlim_t>(memory_mb) << 20;
    setrlimit(RLIMIT_AS, &lim);
    Outcome o;
    try {
      o = fn();
    } catch (const std::bad_alloc&) {
      o = {false, "out of memory (limit " + std::to_string(memory_mb) + " MB)"};
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const std::string msg = std::string(o.pass ? "1" : "0") + o.detail;
    std::size_t done = 0;
    while (done < msg.size()) {
      const auto w = write(fds[1], msg.data() + done, msg.size() - done);
      if (w <= 0) break;
      done += static_cast<std::size_t>(w);
    }
    close(fds[1]);
    _exit(0);
  }
  close(fds[1]);
  std::string msg;
  char buf[4096];
  ssize_t got = 0;
  while ((got = read(fds[0], buf, sizeof buf)) > 0) msg.append(buf, static_cast<std::size_t>(got));
  close(fds[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (msg.empty()) {
    if (WIFSIGNALED(status)) return {false, "killed by signal " + std::to_string(WTERMSIG(status))};
    return {false, "no result"};
  }
  return {msg[0] == '1', msg.substr(1)};
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  std::vector<int> only;
  CLI::App app{"acceptance criteria"};
  app.add_option("--out", s.out_dir, "directory for the reference tables");
  app.add_option("--only", only, "run only these criteria")->delimiter(',');
  app.add_option("--alt-threads", s.alt_threads, "second thread count for the determinism check")
      ->check(CLI::PositiveNumber);
  app.add_option("--box-max-basis", s.box_max_basis, "largest basis per degree in the r,t <= 4 grid");
  app.add_option("--memory-mb", s.memory_mb, "address-space limit per criterion");
  app.add_option("--seed", s.seed, "seed for the randomized criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "star product vs p-q normal ordering, 200 random pairs", [&] { return from_suite(star_oracle_suite(200, s.seed)); }},
      {2, "symmetric vs tensor gluing, arities <= 3", [] { return from_suite(compare_circk_suite(3)); }},
      {3, "partial symmetrization and k-l factor lemmas, words of length <= 4", [] { return from_suite(lemma_suite(4)); }},
      {4, "coFrob coassociativity and counit, m,n <= 4, genus <= 2", [] { return from_suite(coassoc_suite(4, 4, 2)); }},
      {5, "cobar d^2 = 0, r+t <= 6, g <= 2, p <= 3", [] { return from_suite(dsq_suite(6, 2, 3)); }},
      {6, "square zero vs properadic relations, 64 random H", [&] { return from_suite(theorem_suite(64, s.seed, 3)); }},
      {7, "homology facts", [] { return criterion7(); }},
      {8, "Euler characteristics and determinism, r,t <= 4, g <= 2", [&] { return criterion8(s); }},
      {9, "homology grid r+t <= 6, g <= 2 without truncation", [&] { return criterion9(s); }},
  };

  fs::create_directories(s.out_dir);
  std::ofstream summary(s.out_dir / "acceptance.txt");
  bool all = true;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = isolated(c.run, s.memory_mb);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    char time_buf[32];
    std::snprintf(time_buf, sizeof time_buf, "%.1f s", secs);
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << time_buf
         << "): " << o.detail;
    std::cout << line.str() << std::endl;
    summary << line.str() << std::endl;
  }
  return all ? 0 : 1;
}
