#include "steinforge/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "steinforge/error.hpp"
#include "steinforge/io.hpp"
#include "steinforge/matching.hpp"
#include "steinforge/suites.hpp"

namespace steinforge::cli {

namespace {

using io::Json;

struct Flags {
  std::optional<int> s;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> max_dim;
  std::optional<int> max_bricks;
  std::string format = "text";
  int jobs = 1;
};

void add_format(CLI::App* app, Flags& f) {
  app->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

void add_config(CLI::App* app, Flags& f) {
  app->add_option("--s", f.s, "Dimension s");
  app->add_option("--n", f.n, "Number of bricks or blocks");
  app->add_option("--m", f.m, "Number of domain blocks");
  app->add_option("--seed", f.seed, "Seed for randomized suites");
  app->add_option("--trials", f.trials, "Number of random trials");
  app->add_option("--max-dim", f.max_dim, "Dimension cap for complexes");
  app->add_option("--max-bricks", f.max_bricks, "Brick-count bound for random coverings");
  app->add_option("--jobs", f.jobs, "Worker threads");
  add_format(app, f);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// ---------------------------------------------------------------- matching --

int cmd_matching(const Flags& f, bool oriented, std::ostream& out) {
  if (!f.s || !f.n) throw InvalidInput("matching needs --s and --n");
  if (*f.s < 1) throw InvalidInput("--s must be at least 1");
  if (*f.n < 1) throw InvalidInput("--n must be at least 1");
  const Multigraph g = make_sKn(*f.s, *f.n);
  const SimplicialComplex k = matching_complex(g, oriented, f.max_dim);
  const HomologyReport h = homology(k, true);
  const int conn = nu(*f.n) - 1;
  std::optional<ConnectivityVerdict> v;
  if (conn >= 0) v = connectivity_report(k, conn);
  const std::string verdict = !v ? "n/a" : v->pass ? "pass" : "fail";

  if (f.format == "json") {
    Json counts = Json::array();
    for (int d = 0; d <= k.dim(); ++d) counts.push_back(k.count(d));
    Json j{{"s", *f.s}, {"n", *f.n}, {"oriented", oriented}, {"simplices", counts}, {"homology", io::to_json(h)},
           {"valid_through", h.valid_through}, {"k", conn}, {"verdict", verdict}};
    if (v && !v->pass) j["witness"] = v->reason;
    out << j.dump(2) << "\n";
  } else if (f.format == "csv") {
    out << "dim,simplices,betti,torsion\n";
    for (int d = 0; d <= std::max(k.dim(), h.valid_through); ++d) {
      const HomologyGroup* grp = h.at(d);
      std::string torsion;
      if (grp)
        for (const auto& t : grp->torsion) torsion += (torsion.empty() ? "" : " ") + t.str();
      out << d << "," << k.count(d) << "," << (grp ? std::to_string(grp->betti) : "") << "," << torsion << "\n";
    }
  } else {
    out << (oriented ? "oriented matching complex" : "matching complex") << " of " << *f.s << "K_" << *f.n << "\n";
    out << "simplices by dimension:";
    for (int d = 0; d <= k.dim(); ++d) out << " " << k.count(d);
    out << "\n";
    for (const auto& grp : h.groups) out << "reduced H_" << grp.dim << " = " << grp.str() << "\n";
    out << "homologically " << conn << "-connected (nu(n) - 1 = " << conn << "): " << verdict;
    if (v && !v->pass) out << " (" << v->reason << ")";
    out << "\n";
  }
  return v && !v->pass ? kPropertyFailed : kPass;
}

// ------------------------------------------------------------------ verify --

int cmd_verify(const std::string& suite, const Flags& f, std::ostream& out) {
  SuiteConfig c{f.s, f.n, f.m, f.seed, f.trials, f.max_dim, f.max_bricks, f.jobs};
  const SuiteReport r = run_suite(suite, c);
  std::ostringstream summary;
  summary << "suite " << suite << ": " << r.passed() << "/" << r.verdicts.size() << " " << (r.pass() ? "pass" : "FAIL");
  auto verdict_json = [](const Verdict& v) {
    Json j{{"check", v.check}, {"instance", v.instance}, {"pass", v.pass}};
    if (!v.witness.is_null()) j["witness"] = v.witness;
    return j;
  };
  if (f.format == "json") {
    Json list = Json::array();
    for (const auto& v : r.verdicts) list.push_back(verdict_json(v));
    out << Json{{"suite", suite}, {"passed", r.passed()}, {"total", r.verdicts.size()}, {"pass", r.pass()},
                {"verdicts", std::move(list)}}
               .dump(2)
        << "\n";
  } else if (f.format == "csv") {
    out << "check,instance,pass\n";
    for (const auto& v : r.verdicts) out << csv_field(v.check) << "," << csv_field(v.instance.dump()) << "," << v.pass << "\n";
  } else {
    out << summary.str() << "\n";
    for (const auto& v : r.verdicts) out << verdict_json(v).dump() << "\n";
  }
  return r.pass() ? kPass : kPropertyFailed;
}

// ------------------------------------------------------------------- group --

void print_map(const DyadicMap& f, std::ostream& out) { out << io::to_json(f).dump(2) << "\n"; }

int cmd_group(const std::string& op, const std::vector<std::string>& files, std::ostream& out) {
  auto need = [&](std::size_t k) {
    if (files.size() != k) throw InvalidInput("group " + op + " takes " + std::to_string(k) + " file(s)");
  };
  if (op == "compose") {
    need(2);
    print_map(reduce(compose(io::read_map(files[0]), io::read_map(files[1]))), out);
  } else if (op == "invert") {
    need(1);
    print_map(inverse(io::read_map(files[0])), out);
  } else if (op == "equal") {
    need(2);
    const bool eq = equals(io::read_map(files[0]), io::read_map(files[1]));
    out << Json{{"equal", eq}}.dump() << "\n";
    return eq ? kPass : kPropertyFailed;
  } else if (op == "canon") {
    need(1);
    print_map(canonicalize(io::read_map(files[0])).map(), out);
  } else if (op == "stab") {
    need(1);
    const auto stab = stabilizer(canonicalize(io::read_map(files[0])));
    Json elements = Json::array();
    for (const auto& g : stab) elements.push_back(io::to_json(reduce(g)));
    out << Json{{"order", stab.size()}, {"elements", std::move(elements)}}.dump(2) << "\n";
  } else if (op == "transporter") {
    need(2);
    print_map(transporter(canonicalize(io::read_map(files[0])), canonicalize(io::read_map(files[1]))), out);
  } else {
    throw InvalidInput("unknown group operation '" + op + "'");
  }
  return kPass;
}

// --------------------------------------------------------------- enumerate --

int cmd_enumerate(const std::string& kind, const std::vector<std::string>& files, const Flags& f, std::ostream& out) {
  std::vector<Json> items;
  if (kind == "coarsenings") {
    Covering base;
    if (!files.empty()) {
      base = io::read_covering(files.front());
    } else {
      if (!f.s) throw InvalidInput("enumerate coarsenings needs a covering file or --s");
      base = maximal_elementary(*f.s, f.m.value_or(1));
    }
    for (const auto& c : enumerate_coarsenings(strip_labels(base))) items.push_back(io::to_json(c));
  } else if (kind == "elementary") {
    if (!f.s) throw InvalidInput("enumerate elementary needs --s");
    for (const auto& c : enumerate_elementary(*f.s, f.n.has_value(), f.n)) items.push_back(io::to_json(c));
  } else if (kind == "en" || kind == "ve") {
    if (!f.s || !f.n) throw InvalidInput("enumerate " + kind + " needs --s and --n");
    if (*f.s < 1) throw InvalidInput("--s must be at least 1");
    if (*f.n < 2) throw InvalidInput("--n must be at least 2");
    for (const auto& u : enumerate_posets(*f.s, *f.n, kind == "ve").elements) items.push_back(io::to_json(u));
  } else {
    throw InvalidInput("unknown enumeration '" + kind + "'");
  }
  if (f.format == "json") {
    out << Json{{"kind", kind}, {"count", items.size()}, {"items", items}}.dump(2) << "\n";
  } else if (f.format == "csv") {
    out << "index,item\n";
    for (std::size_t i = 0; i < items.size(); ++i) out << i << "," << csv_field(items[i].dump()) << "\n";
  } else {
    for (const auto& j : items) out << j.dump() << "\n";
    out << "count: " << items.size() << "\n";
  }
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in Brin-Thompson groups and the local structure of their Stein spaces", "steinforge"};
  app.require_subcommand(1);
  Flags flags;

  auto* matching = app.add_subcommand("matching", "Matching complex of sK_n with homology and connectivity verdict");
  bool oriented = false;
  matching->add_option("--s", flags.s, "Edge colours")->required();
  matching->add_option("--n", flags.n, "Nodes")->required();
  matching->add_flag("--oriented", oriented, "Oriented matching complex");
  matching->add_option("--max-dim", flags.max_dim, "Dimension cap");
  add_format(matching, flags);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "Suite name")->required();
  add_config(verify, flags);

  auto* group = app.add_subcommand("group", "Operations on maps stored as JSON (compose A B applies B first)");
  std::string op;
  std::vector<std::string> files;
  group->add_option("op", op, "compose | invert | equal | canon | stab | transporter")->required();
  group->add_option("files", files, "Map files");

  auto* enumerate = app.add_subcommand("enumerate", "List coarsenings, elementary coverings, E_n or VE_n");
  std::string kind;
  std::vector<std::string> inputs;
  enumerate->add_option("kind", kind, "coarsenings | elementary | en | ve")->required();
  enumerate->add_option("covering", inputs, "Covering file (coarsenings)");
  add_config(enumerate, flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*matching) return cmd_matching(flags, oriented, out);
    if (*verify) {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        err << "unknown suite '" << suite << "'; known suites:";
        for (const auto& n : names) err << " " << n;
        err << "\n";
        return kUsage;
      }
      return cmd_verify(suite, flags, out);
    }
    if (*group) return cmd_group(op, files, out);
    if (*enumerate) return cmd_enumerate(kind, inputs, flags, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << " (set STEINFORGE_GUARD_OVERRIDE=1 to raise bounds)\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace steinforge::cli
