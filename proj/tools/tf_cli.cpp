// Command-line front end: list registered identities, verify them, render
// coefficient tables, and expand ad-hoc expressions.
#include "tf/registry.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct Flags {
  long order = 0;          // 0 -> default (record default or 40)
  std::string window;      // "L..U"
  long denom = 1;
  bool asJson = false;
  bool asCsv = false;
  bool dense = false;
  std::string out;
  std::string tag;
  std::string include;
};

void addCommonFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--order", f.order, "truncation order (integer q-units)");
  cmd->add_option("--window", f.window, "x-window as L..U");
  cmd->add_option("--denom", f.denom, "q-exponent denominator D");
  cmd->add_flag("--json", f.asJson, "JSON output");
  cmd->add_flag("--csv", f.asCsv, "CSV output");
  cmd->add_flag("--dense", f.dense, "print zero cells instead of blanks");
  cmd->add_option("--out", f.out, "write output to file instead of stdout");
  cmd->add_option("--tag", f.tag, "restrict to identities carrying this tag");
  cmd->add_option("--include", f.include, "identity definition file to load");
}

long defaultOrder(const Flags& f) {
  if (f.order > 0) return f.order;
  if (const char* env = std::getenv("THETAFORGE_ORDER")) {
    long v = std::atol(env);
    if (v > 0) return v;
  }
  return 0;  // let the registry use record defaults
}

std::optional<std::pair<long, long>> parseWindow(const std::string& w) {
  if (w.empty()) return std::nullopt;
  auto pos = w.find("..");
  if (pos == std::string::npos) throw std::runtime_error("bad --window, expected L..U");
  long L = std::stol(w.substr(0, pos));
  long U = std::stol(w.substr(pos + 2));
  if (L > U) throw std::runtime_error("bad --window, need L <= U");
  return std::make_pair(L, U);
}

int emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(f.out);
  if (!os) {
    std::cerr << "error: cannot open " << f.out << "\n";
    return 2;
  }
  os << text;
  return 0;
}

void loadInclude(tf::reg::Registry& reg, const Flags& f) {
  if (f.include.empty()) return;
  std::ifstream is(f.include);
  if (!is) throw std::runtime_error("cannot open identity file: " + f.include);
  std::stringstream ss;
  ss << is.rdbuf();
  reg.addFromFile(ss.str());
}

int cmdList(const Flags& f) {
  tf::reg::Registry reg;
  loadInclude(reg, f);
  std::vector<const tf::reg::IdentityRecord*> recs;
  for (const auto& r : reg.all())
    if (f.tag.empty() || r.hasTag(f.tag)) recs.push_back(&r);
  std::ostringstream os;
  if (f.asJson) {
    json arr = json::array();
    for (const auto* r : recs) {
      json j{{"id", r->id},       {"title", r->title},     {"cite", r->cite},
             {"strategy", r->strategy}, {"tags", r->tags}, {"conjectural", r->conjectural},
             {"order", r->order}};
      arr.push_back(std::move(j));
    }
    os << arr.dump(2) << "\n";
  } else {
    for (const auto* r : recs)
      os << r->id << "  [" << r->strategy << "]  " << r->title << "  (" << r->cite
         << (r->conjectural ? ", conjectural" : "") << ")\n";
    os << recs.size() << " identities\n";
  }
  return emit(f, os.str());
}

int reportVerdict(const tf::reg::Registry::Summary& sum) {
  if (sum.errored > 0) return 2;
  return sum.ok() ? 0 : 1;
}

int cmdVerify(const Flags& f, const std::vector<std::string>& ids, bool all) {
  tf::reg::Registry reg;
  loadInclude(reg, f);
  long order = defaultOrder(f);
  auto window = parseWindow(f.window);

  tf::reg::Registry::Summary sum;
  if (all || ids.empty()) {
    if (window) {
      // verifyAll has no window parameter; run sequentially with the override.
      for (const auto& r : reg.all()) {
        if (!f.tag.empty() && !r.hasTag(f.tag)) continue;
        auto rep = reg.verify(r, order, window);
        if (rep.status == "pass") ++sum.passed;
        else if (rep.status == "error") ++sum.errored;
        else if (r.conjectural) ++sum.conjecturalFailed;
        else ++sum.failed;
        sum.reports.push_back(std::move(rep));
      }
    } else {
      sum = reg.verifyAll(order, f.tag);
    }
  } else {
    for (const auto& id : ids) {
      const auto* r = reg.find(id);
      if (!r) {
        std::cerr << "error: unknown identity: " << id << "\n";
        return 2;
      }
      auto rep = reg.verify(*r, order, window);
      if (rep.status == "pass") ++sum.passed;
      else if (rep.status == "error") ++sum.errored;
      else if (r->conjectural) ++sum.conjecturalFailed;
      else ++sum.failed;
      sum.reports.push_back(std::move(rep));
    }
  }

  std::ostringstream os;
  if (f.asJson) {
    json arr = json::array();
    for (const auto& rep : sum.reports) arr.push_back(json::parse(rep.json()));
    os << arr.dump(2) << "\n";
  } else {
    for (const auto& rep : sum.reports) os << rep.line() << "\n";
    os << "passed " << sum.passed << ", failed " << sum.failed << ", errored "
       << sum.errored;
    if (sum.conjecturalFailed) os << ", conjectural-failed " << sum.conjecturalFailed;
    os << "\n";
  }
  int rc = emit(f, os.str());
  return rc != 0 ? rc : reportVerdict(sum);
}

// Renders the coefficient grid of an expression: rows are x-exponents in
// descending order, columns are q-exponents 0..N (integer units).
int cmdTable(const Flags& f, const std::string& what) {
  long N = defaultOrder(f);
  if (N <= 0) N = 40;
  long L = -2 * N, U = 2 * N;
  if (auto w = parseWindow(f.window)) {
    L = w->first;
    U = w->second;
  }
  if (L > U) {
    std::cerr << "error: empty window\n";
    return 2;
  }

  std::string expr = what;
  if (what == "rr0-vector") expr = "cb2(q*x^2-x,0)";
  else if (what == "inverse2") expr = "poch(q,1)^4*inv(dp(x,1)^2,2,-1)";

  tf::dsl::EvalCtx ec;
  ec.c = tf::Ctx{f.denom, N};
  ec.L = L;
  ec.U = U;
  tf::XSeries v;
  try {
    v = tf::dsl::evaluate(tf::dsl::parse(expr), ec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::ostringstream os;
  auto cell = [&](long m, long e) -> tf::GR {
    return v.coeff(m, e, v.D);  // e in units of q^{1/D}
  };
  auto known = [&](long m) {
    return v.inWindow(m) || (m < v.L ? v.knownBelow() : v.knownAbove());
  };
  if (f.asJson) {
    json rows = json::array();
    for (long m = U; m >= L; --m) {
      if (!known(m)) continue;
      json coeffs = json::array();
      for (long e = 0; e <= N * v.D; ++e) coeffs.push_back(cell(m, e).str());
      rows.push_back(json{{"x", m}, {"coeffs", std::move(coeffs)}});
    }
    json j{{"order", N}, {"denominator", v.D}, {"window", {L, U}}, {"rows", std::move(rows)}};
    os << j.dump(2) << "\n";
  } else {
    os << "x\\q";
    for (long e = 0; e <= N * v.D; ++e) {
      os << ",";
      if (v.D == 1) os << e;
      else os << e << "/" << v.D;
    }
    os << "\n";
    for (long m = U; m >= L; --m) {
      if (!known(m)) continue;
      os << m;
      for (long e = 0; e <= N * v.D; ++e) {
        os << ",";
        tf::GR c = cell(m, e);
        if (!c.isZero() || f.dense) os << c.str();
      }
      os << "\n";
    }
  }
  return emit(f, os.str());
}

int cmdExpand(const Flags& f, const std::string& expr) {
  long N = defaultOrder(f);
  if (N <= 0) N = 40;
  long L = -2 * N, U = 2 * N;
  if (auto w = parseWindow(f.window)) {
    L = w->first;
    U = w->second;
  }
  tf::dsl::EvalCtx ec;
  ec.c = tf::Ctx{f.denom, N};
  ec.L = L;
  ec.U = U;
  tf::XSeries v;
  try {
    v = tf::dsl::evaluate(tf::dsl::parse(expr), ec);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::ostringstream os;
  bool xfree = v.L == 0 && v.U == 0 && v.knownBelow() && v.knownAbove();
  if (f.asJson) {
    json rows = json::array();
    for (long m = v.L; m <= v.U; ++m) {
      const tf::QSeries& q = v.col(m);
      if (q.knownZero() && !f.dense) continue;
      rows.push_back(json{{"x", m}, {"series", q.str()}});
    }
    os << json{{"order", N}, {"denominator", v.D}, {"rows", std::move(rows)}}.dump(2)
       << "\n";
  } else if (xfree) {
    os << v.col(0).str() << "\n";
  } else {
    for (long m = v.L; m <= v.U; ++m) {
      const tf::QSeries& q = v.col(m);
      if (q.knownZero() && !f.dense) continue;
      os << "x^" << m << ": " << q.str() << "\n";
    }
  }
  return emit(f, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact bivariate q-series identity engine"};
  app.require_subcommand(1);

  Flags fList, fVerify, fTable, fExpand;
  std::vector<std::string> verifyIds;
  bool verifyAllFlag = false;
  std::string tableWhat, expandExpr;

  CLI::App* list = app.add_subcommand("list", "list registered identities");
  addCommonFlags(list, fList);

  CLI::App* verify = app.add_subcommand("verify", "verify identities");
  verify->add_option("ids", verifyIds, "identity ids (default: all)");
  verify->add_flag("--all", verifyAllFlag, "verify every registered identity");
  addCommonFlags(verify, fVerify);

  CLI::App* table = app.add_subcommand("table", "render a coefficient grid");
  table->add_option("basis", tableWhat, "rr0-vector | inverse2 | expression")->required();
  addCommonFlags(table, fTable);

  CLI::App* expand = app.add_subcommand("expand", "expand an expression");
  expand->add_option("expr", expandExpr, "expression text")->required();
  addCommonFlags(expand, fExpand);

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) return cmdList(fList);
    if (verify->parsed()) return cmdVerify(fVerify, verifyIds, verifyAllFlag);
    if (table->parsed()) return cmdTable(fTable, tableWhat);
    if (expand->parsed()) return cmdExpand(fExpand, expandExpr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
