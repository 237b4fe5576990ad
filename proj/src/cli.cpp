#include "mirrorgw/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mirrorgw/bps.hpp"
#include "mirrorgw/errors.hpp"
#include "mirrorgw/invariants.hpp"
#include "mirrorgw/suites.hpp"

namespace mirrorgw {

using Json = nlohmann::ordered_json;

const std::vector<PinnedBps>& pinned_table(int which) {
  static const std::vector<PinnedBps> table1 = {
      {8, {8}, {2, 2, 2}, {"59021312", "821654025830400", "12197109744970010814464", "186083410628492378226388631552"}},
      {9, {2, 7}, {2, 2, 2}, {"19133912", "52069545843672", "150771900962422866056", "448721851648931529402358688"}},
      {9, {3, 6}, {2, 2, 2}, {"9303984", "9656915909184", "10669913703022812624", "12119013327306237518117376"}},
      {9, {4, 5}, {2, 2, 2}, {"6536800", "4306289363200", "3019921285456823200", "2177140100777199737600000"}},
      {10, {2, 2, 6}, {2, 2, 2}, {"7036416", "4323279882240", "2819049510852887040", "1889305224389886741405696"}},
      {10, {2, 3, 5}, {2, 2, 2}, {"3936600", "1091194853400", "321105896368043400", "97128823290992207460000"}},
      {10, {2, 4, 4}, {2, 2, 2}, {"3252224", "699998060544", "159942140236292096", "37565431180080918822912"}},
      {10, {3, 3, 4}, {2, 2, 2}, {"2589408", "396151430400", "64359976334347296", "10748812573405031454720"}},
  };
  static const std::vector<PinnedBps> table2 = {
      {9, {9}, {2, 2, 3}, {"1579510449", "506855012110118424", "174633921378662035929052320"}},
      {10, {2, 8}, {2, 2, 3}, {"466477056", "25865899481481216", "1538349758855955308748800"}},
      {10, {3, 7}, {2, 2, 3}, {"200848599", "3684692607275358", "72513809257771729565550"}},
      {10, {4, 6}, {2, 2, 3}, {"122812416", "1209608310822912", "12780622639872867502080"}},
      {10, {5, 5}, {2, 2, 3}, {"104480625", "841277146035000", "7266883194629367785000"}},
  };
  static const std::vector<PinnedBps> table3 = {
      {9, {9}, {2, 2, 2, 2}, {"2395066806", "1718927099008463268", "957208127608222375829677128"}},
      {10, {2, 8}, {2, 2, 2, 2}, {"702562304", "86939314932416512", "8348345278919524413816832"}},
      {10, {3, 7}, {2, 2, 2, 2}, {"302321376", "12364886269091538", "392695531026064094763648"}},
      {10, {4, 6}, {2, 2, 2, 2}, {"184771584", "4056318495977472", "69156291871338627290112"}},
      {10, {5, 5}, {2, 2, 2, 2}, {"157178750", "2820556380767500", "39310596116635041745000"}},
  };
  static const std::vector<PinnedBps> table4 = {
      {10, {10}, {2, 3, 3}, {"51415320000", "444475303469701680000", "4089048226644406809222184680000"}},
      {10, {10}, {2, 2, 4}, {"38922224000", "295035175517918176000", "2467449594491156931046837776000"}},
      {10, {10}, {2, 2, 2, 3}, {"75062592000", "1394799570099498816000", "20109980886063766606715932224000"}},
  };
  switch (which) {
    case 1: return table1;
    case 2: return table2;
    case 3: return table3;
    case 4: return table4;
  }
  throw PreconditionViolated("no table " + std::to_string(which));
}

const std::vector<PinnedInvariant>& pinned_cubic_invariants() {
  static const std::vector<PinnedInvariant> values = {
      {1, {3, 1, 1}, "18"},        {1, {3, 1, 1, 1}, "18"},   {1, {2, 2, 1}, "45"},   {1, {2, 2, 1, 1}, "45"},
      {2, {3, 3, 1}, "108"},       {2, {3, 3, 1, 1}, "216"},  {2, {3, 2, 2}, "378"},  {2, {3, 2, 2, 1}, "756"},
      {2, {2, 2, 2, 2}, "2187"},   {3, {3, 3, 3}, "648"},     {3, {3, 3, 3, 1}, "1944"}, {3, {3, 3, 2, 2}, "7452"},
      {4, {3, 3, 3, 3}, "15552"},
  };
  return values;
}

const std::vector<PinnedConstant>& pinned_cubic_constants() {
  static const std::vector<PinnedConstant> values = {
      {{1, 3, 3}, 1, "6"},      {{2, 2, 3}, 1, "15"},     {{1, 1, 3}, 2, "36"},      {{1, 2, 2}, 2, "126"},
      {{1, 1, 1}, 3, "216"},    {{1, 3, 3, 3}, 1, "6"},   {{2, 2, 3, 3}, 1, "15"},   {{1, 1, 3, 3}, 2, "72"},
      {{1, 2, 2, 3}, 2, "252"}, {{1, 1, 1, 3}, 3, "648"}, {{2, 2, 2, 2}, 2, "729"},  {{1, 1, 2, 2}, 3, "2484"},
      {{1, 1, 1, 1}, 4, "5184"},
  };
  return values;
}

TableCheck check_table_entry(const PinnedBps& entry, int D) {
  TableCheck check;
  check.entry = entry;
  auto g = make_geometry(entry.n, entry.a);
  int N = static_cast<int>(entry.c.size());
  InvariantSeries gw = N == 3 ? cy_three_point_series(g, entry.c[0], entry.c[1], entry.c[2], D)
                              : cy_four_point_series(g, entry.c, D);
  BPSSeries bps = bps_from_gw(gw, N);
  check.gw = gw.values;
  check.bps.assign(bps.n_values.begin() + 1, bps.n_values.end());
  for (int d = 1; d <= D && d <= static_cast<int>(entry.bps.size()); ++d) {
    ++check.compared;
    BigRational want = parse_rational(entry.bps[d - 1]);
    if (check.bps[d - 1] != want) {
      check.mismatches.push_back(g.name() + " d=" + std::to_string(d) + ": computed " + to_string(check.bps[d - 1]) +
                                 ", published " + entry.bps[d - 1]);
    }
  }
  return check;
}

namespace {

struct Row {
  int d = 0;
  std::vector<int> b;
  std::vector<int> c;
  BigRational gw;
  std::optional<BigRational> bps;
};

struct Document {
  int n = 0;
  std::vector<int> a;
  std::vector<Row> rows;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not an integer");
    }
  }
  return out;
}

Json to_json(const Document& doc, int K) {
  Json results = Json::array();
  for (const auto& r : doc.rows) {
    results.push_back(Json{{"d", r.d},
                           {"N", static_cast<int>(r.c.size())},
                           {"b", r.b},
                           {"c", r.c},
                           {"gw", to_string(r.gw)},
                           {"bps", r.bps ? Json(to_string(*r.bps)) : Json(nullptr)}});
  }
  return Json{{"geometry", {{"n", doc.n}, {"a", doc.a}}}, {"results", results}, {"meta", {{"K", K}, {"version", kVersion}}}};
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

void write_csv(std::ostream& out, const std::vector<Document>& docs) {
  out << "n,a,d,N,b,c,gw,bps\n";
  for (const auto& doc : docs) {
    for (const auto& r : doc.rows) {
      out << doc.n << ',' << join(doc.a) << ',' << r.d << ',' << r.c.size() << ',' << join(r.b) << ',' << join(r.c)
          << ',' << to_string(r.gw) << ',' << (r.bps ? to_string(*r.bps) : "") << '\n';
    }
  }
}

// Rows for the given insertions at every degree 0..D satisfying the dimension constraint.
// BPS numbers are attached for Calabi-Yau targets with N >= 3 primary insertions.
std::vector<Row> insertion_rows(const CIGeometry& g, const std::vector<int>& b, const std::vector<int>& c, int D, int K) {
  int N = static_cast<int>(c.size());
  auto ctx = shared_context(g, K, std::max(N, 3));
  std::vector<Row> rows;
  InvariantSeries series{g, c, {}};
  for (int d = 0; d <= D; ++d) {
    InvariantQuery q{d, b, c};
    if (!satisfies_dimension(g, q)) continue;
    rows.push_back(Row{d, b, c, gw_invariant(*ctx, q), std::nullopt});
  }
  bool primary = std::all_of(b.begin(), b.end(), [](int x) { return x == 0; });
  if (g.nu == 0 && N >= 3 && primary && static_cast<int>(rows.size()) == D + 1) {
    for (const auto& r : rows) series.values.push_back(r.gw);
    BPSSeries bps = bps_from_gw(series, N);
    for (auto& r : rows) {
      if (r.d >= 1) r.bps = bps.n_values[static_cast<size_t>(r.d)];
    }
  }
  return rows;
}

int emit(std::ostream& out, const std::string& path, const std::string& text, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(path);
  if (!file) {
    err << "error: cannot write '" << path << "'\n";
    return 2;
  }
  file << text;
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact genus-0 descendant invariants and BPS numbers from mirror series", "mirrorgw"};
  std::optional<int> n_opt, points_opt;
  std::string a_text, b_text, c_text, preset, suite, format = "json", out_path;
  std::optional<int> degree_opt, K_opt;
  app.add_option("--n", n_opt, "ambient P^{n-1} (n >= 2)");
  app.add_option("--a", a_text, "comma-separated degrees a_1,...,a_l (each >= 2)");
  app.add_option("--points", points_opt, "number of marked points N");
  app.add_option("--degree", degree_opt, "largest curve degree D");
  app.add_option("--b", b_text, "comma-separated descendant powers b_1,...,b_N (default all 0)");
  app.add_option("--c", c_text, "comma-separated hyperplane powers c_1,...,c_N");
  app.add_option("--K", K_opt, "truncation order of q-series (>= degree)");
  app.add_option("--preset", preset, "published data set")
      ->check(CLI::IsMember({"table1", "table2", "table3", "table4", "cubic"}));
  app.add_option("--suite", suite, "verification suite")->check(CLI::IsMember(suite_names()));
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "output file (default standard output)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!preset.empty() && !suite.empty()) throw UsageError("--preset and --suite are exclusive");

    if (!suite.empty()) {
      SuiteResult r = run_suite(suite);
      std::string text;
      if (format == "json") {
        text = Json{{"suite", r.name}, {"passed", r.passed}, {"checks", r.checks}, {"details", r.details}}.dump(2) + "\n";
      } else {
        text = "suite,passed,checks\n" + r.name + "," + (r.passed ? "true" : "false") + "," + std::to_string(r.checks) + "\n";
      }
      int rc = emit(out, out_path, text, err);
      if (rc) return rc;
      if (!r.passed) {
        for (const auto& line : r.details) {
          if (line.rfind("FAIL", 0) == 0) err << line << "\n";
        }
        return 1;
      }
      return 0;
    }

    if (!preset.empty()) {
      std::vector<Document> docs;
      std::vector<std::string> mismatches;
      int K = 0;
      if (preset == "cubic") {
        auto g = make_geometry(5, {3});
        K = K_opt.value_or(4);
        if (K < 4) throw UsageError("--K must be at least 4 for the cubic preset");
        auto ctx = shared_context(g, K, 4);
        Document doc{g.n, g.a, {}};
        for (const auto& pin : pinned_cubic_invariants()) {
          std::vector<int> b(pin.c.size(), 0);
          BigRational v = gw_invariant(*ctx, InvariantQuery{pin.d, b, pin.c});
          if (v != parse_rational(pin.value)) {
            mismatches.push_back("d=" + std::to_string(pin.d) + " c=" + join(pin.c) + ": computed " + to_string(v) +
                                 ", published " + pin.value);
          }
          doc.rows.push_back(Row{pin.d, b, pin.c, v, std::nullopt});
        }
        docs.push_back(std::move(doc));
      } else {
        int D = degree_opt.value_or(3);
        K = K_opt.value_or(D);
        if (D < 1) throw UsageError("--degree must be at least 1");
        if (K < D) throw UsageError("--K must be at least --degree");
        const auto& table = pinned_table(preset.back() - '0');
        std::vector<TableCheck> checks(table.size());
        parallel_for(static_cast<int>(table.size()), [&](int i) { checks[i] = check_table_entry(table[i], D); });
        for (const auto& chk : checks) {
          Document doc{chk.entry.n, chk.entry.a, {}};
          std::vector<int> b(chk.entry.c.size(), 0);
          for (int d = 1; d <= D; ++d) doc.rows.push_back(Row{d, b, chk.entry.c, chk.gw[d], chk.bps[d - 1]});
          mismatches.insert(mismatches.end(), chk.mismatches.begin(), chk.mismatches.end());
          docs.push_back(std::move(doc));
        }
      }
      std::string text;
      if (format == "json") {
        Json documents = Json::array();
        for (const auto& doc : docs) documents.push_back(to_json(doc, K));
        text = Json{{"preset", preset}, {"documents", documents}, {"verified", mismatches.empty()}, {"mismatches", mismatches}}
                   .dump(2) +
               "\n";
      } else {
        std::ostringstream csv;
        write_csv(csv, docs);
        text = csv.str();
      }
      int rc = emit(out, out_path, text, err);
      if (rc) return rc;
      for (const auto& m : mismatches) err << "MISMATCH " << m << "\n";
      return mismatches.empty() ? 0 : 1;
    }

    if (!n_opt) throw UsageError("--n is required unless --preset or --suite is given");
    CIGeometry g;
    try {
      g = make_geometry(*n_opt, parse_list(a_text, "--a"));
    } catch (const InvalidGeometry& e) {
      throw UsageError(e.what());
    }
    int D = degree_opt.value_or(1);
    if (D < 0) throw UsageError("--degree must be nonnegative");
    int K = K_opt.value_or(std::max(D, 1));
    if (K < D) throw UsageError("--K must be at least --degree");
    std::vector<int> c = parse_list(c_text, "--c");
    std::vector<int> b = parse_list(b_text, "--b");
    Document doc{g.n, g.a, {}};
    if (!c.empty()) {
      if (points_opt && *points_opt != static_cast<int>(c.size())) throw UsageError("--points disagrees with --c");
      if (b.empty()) b.assign(c.size(), 0);
      if (b.size() != c.size()) throw UsageError("--b and --c must have the same length");
      for (size_t s = 0; s < c.size(); ++s) {
        if (c[s] < 0 || b[s] < 0) throw UsageError("insertion exponents must be nonnegative");
      }
      doc.rows = insertion_rows(g, b, c, D, K);
    } else {
      if (!points_opt || *points_opt < 1) throw UsageError("give --c or a positive --points");
      if (!b.empty()) throw UsageError("--b needs --c");
      int N = *points_opt;
      for (int d = 0; d <= D; ++d) {
        for (const auto& q : sorted_queries(g, N, d)) {
          auto ctx = shared_context(g, K, std::max(N, 3));
          doc.rows.push_back(Row{d, q.b, q.c, gw_invariant(*ctx, q), std::nullopt});
        }
      }
      if (g.nu == 0 && N >= 3) {
        // Attach BPS numbers to primary rows: for a Calabi-Yau target every degree occurs.
        std::map<std::vector<int>, InvariantSeries> by_c;
        for (const auto& r : doc.rows) {
          if (std::any_of(r.b.begin(), r.b.end(), [](int x) { return x != 0; })) continue;
          auto& s = by_c.try_emplace(r.c, InvariantSeries{g, r.c, {}}).first->second;
          s.values.push_back(r.gw);
        }
        for (auto& r : doc.rows) {
          auto it = by_c.find(r.c);
          if (r.d == 0 || it == by_c.end() || std::any_of(r.b.begin(), r.b.end(), [](int x) { return x != 0; }))
            continue;
          r.bps = bps_from_gw(it->second, N).n_values[static_cast<size_t>(r.d)];
        }
      }
    }
    std::string text;
    if (format == "json") {
      text = to_json(doc, K).dump(2) + "\n";
    } else {
      std::ostringstream csv;
      write_csv(csv, {doc});
      text = csv.str();
    }
    return emit(out, out_path, text, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mirrorgw
