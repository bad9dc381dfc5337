// cliffspo: classification tables, representation dumps and verification
// suites for the involution-defined subgroups of real Clifford algebras.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliff/groups.hpp"
#include "cliff/representation.hpp"

using json = nlohmann::ordered_json;
using namespace cliff;

namespace {

constexpr int kExitFlags = 1;
constexpr int kExitScope = 2;
constexpr int kExitCheckFailed = 3;

int desk_limit() {
  if (const char* env = std::getenv("CLIFFORD_MAX_N")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid CLIFFORD_MAX_N\n";
  }
  return 10;
}

std::string fmt_residual(double r) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", r);
  return buf;
}

template <class Fn>
void parallel_for(std::size_t count, Fn fn) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = std::min<std::size_t>(hw ? hw : 1, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Row {
  GroupId group;
  Signature sig;
  ClassicalGroupDescriptor desc;
  long long lie_dim;
};

json row_json(const Row& r) {
  return json{{"group", group_token(r.group)},  {"p", r.sig.p},
              {"q", r.sig.q},                   {"family", r.desc.family_token()},
              {"m", r.desc.m},                  {"multiplicity", r.desc.multiplicity},
              {"lie_dim", r.lie_dim},           {"group_iso", r.desc.group_name()},
              {"algebra_iso", r.desc.algebra_name()}};
}

std::string row_csv(const Row& r) {
  std::ostringstream os;
  os << group_token(r.group) << "," << r.sig.p << "," << r.sig.q << ","
     << r.desc.family_token() << "," << r.desc.m << "," << r.desc.multiplicity << ","
     << r.lie_dim;
  return os.str();
}

constexpr const char* kCsvHeader = "group,p,q,family,m,multiplicity,lie_dim";

void print_rows_text(const std::vector<Row>& rows) {
  std::printf("%-8s %-3s %-3s %-24s %-24s %s\n", "group", "p", "q", "group_iso", "algebra_iso",
              "lie_dim");
  for (const Row& r : rows)
    std::printf("%-8s %-3d %-3d %-24s %-24s %lld\n", group_token(r.group).c_str(), r.sig.p,
                r.sig.q, r.desc.group_name().c_str(), r.desc.algebra_name().c_str(), r.lie_dim);
}

int run_classify(GroupId g, int p, int q, const std::string& format) {
  Row row{g, Signature(p, q), classify_algebra(g, Signature(p, q)),
          algebra_dim_count(g, Signature(p, q))};
  if (format == "json") {
    json out{{"schema", 1}, {"command", "classify"}};
    out.update(row_json(row));
    std::cout << out.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << kCsvHeader << "\n" << row_csv(row) << "\n";
  } else {
    std::cout << row.desc.group_name() << "\n";
  }
  return 0;
}

int run_table(int max_n, const std::string& format) {
  std::vector<Row> rows;
  for (GroupId g : kAllGroups)
    for (int p = 0; p <= max_n; ++p)
      for (int q = 0; p + q <= max_n; ++q)
        if (group_in_scope(g, Signature(p, q))) rows.push_back({g, Signature(p, q), {}, 0});
  parallel_for(rows.size(), [&](std::size_t i) {
    rows[i].desc = classify_algebra(rows[i].group, rows[i].sig);
    rows[i].lie_dim = algebra_dim_count(rows[i].group, rows[i].sig);
  });
  if (format == "json") {
    json out{{"schema", 1}, {"command", "table"}, {"max_n", max_n}};
    json arr = json::array();
    for (const Row& r : rows) arr.push_back(row_json(r));
    out["rows"] = arr;
    std::cout << out.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << kCsvHeader << "\n";
    for (const Row& r : rows) std::cout << row_csv(r) << "\n";
  } else {
    print_rows_text(rows);
  }
  return 0;
}

int run_verify(std::optional<GroupId> group, int p, int q, int samples, std::uint64_t seed,
               double tol, const std::string& format) {
  Signature sig(p, q);
  std::vector<GroupId> groups;
  if (group) {
    if (!group_in_scope(*group, sig))
      throw OutOfScopeError(group_display(*group) + " " + sig.str() + " out of scope: " +
                            group_scope_rule(*group));
    groups.push_back(*group);
  } else {
    for (GroupId g : kAllGroups)
      if (group_in_scope(g, sig)) groups.push_back(g);
    if (groups.empty())
      throw OutOfScopeError(sig.str() + " is out of scope for all five groups");
  }

  std::vector<CellReport> reports(groups.size());
  parallel_for(groups.size(), [&](std::size_t i) {
    reports[i] = isomorphism_witness(groups[i], sig, samples, seed, tol);
  });

  bool all_pass = true;
  std::vector<std::string> failing;
  for (const CellReport& r : reports) {
    if (!r.pass) all_pass = false;
    for (const CheckResult& c : r.checks)
      if (!c.pass) failing.push_back(group_token(r.group) + ":" + c.name);
  }

  if (format == "json") {
    json out{{"schema", 1}, {"command", "verify"}, {"samples", samples},
             {"seed", seed},  {"tol", tol}};
    json cells = json::array();
    for (const CellReport& r : reports) {
      json cell = row_json({r.group, r.sig, r.descriptor, r.lie_dim});
      json checks = json::array();
      for (const CheckResult& c : r.checks)
        checks.push_back(json{{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
      cell["checks"] = checks;
      cell["pass"] = r.pass;
      cells.push_back(cell);
    }
    out["cells"] = cells;
    out["pass"] = all_pass;
    std::cout << out.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "group,p,q,check,residual,pass\n";
    for (const CellReport& r : reports)
      for (const CheckResult& c : r.checks)
        std::cout << group_token(r.group) << "," << r.sig.p << "," << r.sig.q << "," << c.name
                  << "," << fmt_residual(c.residual) << "," << (c.pass ? "1" : "0") << "\n";
  } else {
    for (const CellReport& r : reports) {
      std::cout << "cell " << group_token(r.group) << " p=" << r.sig.p << " q=" << r.sig.q
                << " descriptor=" << r.descriptor.group_name()
                << " algebra=" << r.descriptor.algebra_name() << " lie_dim=" << r.lie_dim
                << "\n";
      for (const CheckResult& c : r.checks)
        std::cout << "  check " << c.name << " residual " << fmt_residual(c.residual) << " "
                  << (c.pass ? "pass" : "FAIL") << "\n";
      std::cout << "  result " << (r.pass ? "PASS" : "FAIL") << "\n";
    }
    std::cout << (all_pass ? "verify PASS" : "verify FAIL") << "\n";
  }
  if (!all_pass) {
    std::cerr << "verify failed:";
    for (const std::string& f : failing) std::cerr << " " << f;
    std::cerr << "\n";
    return kExitCheckFailed;
  }
  return 0;
}

int run_rep_dump(int p, int q, const std::string& normalize) {
  Representation rep = build_representation(Signature(p, q));
  if (normalize == "p")
    rep = normalize_rep(rep, Side::P);
  else if (normalize == "q")
    rep = normalize_rep(rep, Side::Q);
  std::cout << rep_dump(rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford algebra group classification and verification"};
  app.require_subcommand(1);
  const int limit = desk_limit();

  std::string group_name, format = "text", normalize = "none";
  int p = 0, q = 0, max_n = 8, samples = 100;
  std::uint64_t seed = 42;
  double tol = 1e-9;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  };
  auto add_pq = [&](CLI::App* cmd) {
    cmd->add_option("-p", p, "generators squaring to +1")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("-q", q, "generators squaring to -1")
        ->required()
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* classify = app.add_subcommand("classify", "classify one group cell");
  classify->add_option("--group", group_name, "group token")->required();
  add_pq(classify);
  add_format(classify);

  CLI::App* table = app.add_subcommand("table", "classification tables for all five groups");
  table->add_option("--max-n", max_n, "largest p+q")->check(CLI::PositiveNumber);
  add_format(table);

  CLI::App* verify = app.add_subcommand("verify", "exact invariants plus sampled witnesses");
  verify->add_option("--group", group_name, "group token (default: all in scope)");
  add_pq(verify);
  verify->add_option("--samples", samples, "sample count");
  verify->add_option("--seed", seed, "PRNG seed");
  verify->add_option("--tol", tol, "float tolerance");
  add_format(verify);

  CLI::App* dump = app.add_subcommand("rep-dump", "generator matrices of a representation");
  add_pq(dump);
  dump->add_option("--normalize", normalize, "conjugate a side product to its canonical form")
      ->check(CLI::IsMember({"none", "p", "q"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      std::cerr << e.what() << "\n";
      return kExitFlags;
    }
    return app.exit(e);  // --help and friends
  }

  try {
    if (*classify || *verify) {
      if (!group_name.empty() && !group_from_token(group_name)) {
        std::cerr << "unknown group token '" << group_name
                  << "' (expected spo2i1, spo2i3, spo23, spo12 or spo2)\n";
        return kExitFlags;
      }
    }
    if ((*classify || *verify || *dump) && p + q > limit) {
      std::cerr << "p + q exceeds the configured limit n <= " << limit
                << " (override with CLIFFORD_MAX_N)\n";
      return kExitFlags;
    }
    if (*classify) return run_classify(*group_from_token(group_name), p, q, format);
    if (*table) {
      if (max_n > limit) {
        std::cerr << "--max-n exceeds the configured limit n <= " << limit
                  << " (override with CLIFFORD_MAX_N)\n";
        return kExitFlags;
      }
      return run_table(max_n, format);
    }
    if (*verify) {
      if (samples < 1) {
        std::cerr << "--samples must be at least 1\n";
        return kExitFlags;
      }
      if (tol <= 0) {
        std::cerr << "--tol must be positive\n";
        return kExitFlags;
      }
      std::optional<GroupId> g;
      if (!group_name.empty()) g = group_from_token(group_name);
      return run_verify(g, p, q, samples, seed, tol, format);
    }
    if (*dump) return run_rep_dump(p, q, normalize);
  } catch (const OutOfScopeError& e) {
    std::cerr << e.what() << "\n";
    return kExitScope;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFlags;
  }
  return 0;
}
