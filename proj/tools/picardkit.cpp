// picardkit command-line interface.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "picardkit/cones.hpp"
#include "picardkit/doublecover.hpp"
#include "picardkit/enumerate.hpp"
#include "picardkit/fibration.hpp"
#include "picardkit/io.hpp"
#include "picardkit/verify.hpp"

namespace {

using namespace picardkit;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

unsigned threads_from_env() {
  const char* v = std::getenv("PICARDKIT_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  try {
    const long n = std::stol(v);
    return n > 0 ? static_cast<unsigned>(n) : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

struct Output {
  std::string format = "text";
  std::string path;

  void emit(const json& doc, const std::string& text) const {
    const std::string body = format == "json" ? doc.dump(2) + "\n" : text;
    if (path.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body;
  }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", out.path, "Write output to a file instead of stdout");
}

std::string basis_line(const SurfaceModel& model) {
  std::ostringstream os;
  os << "basis:";
  for (const auto& b : model.basis_labels()) os << ' ' << b;
  return os.str();
}

int run_enumerate(const std::string& kind, int rank, const Output& out) {
  const auto fam = enumerate_family(kind == "exceptional" ? FamilyKind::Exceptional : FamilyKind::ConicBundle, rank);
  std::ostringstream text;
  text << kind << " classes on " << fam.model().name() << ": " << fam.size() << "\n";
  text << "# (d; m_1,..,m_r) = d H - sum m_i E_i\n";
  for (const auto& c : fam) text << c << "\n";
  out.emit(io::envelope("enumerate", {{"kind", kind}, {"rank", rank}}, io::to_json(fam)), text.str());
  return kExitOk;
}

int run_pairs(int rank, const Output& out, unsigned threads) {
  const auto groups = classify_finite_pairs(rank, threads);
  const auto model = SurfaceModel::blowup_p2(rank);
  json result = json::array();
  std::ostringstream text;
  text << "finite conic pairs on " << model.name() << " (K^2 = " << 9 - rank << "): " << groups.size()
       << " signature groups\n";
  for (const auto& g : groups) {
    result.push_back(io::to_json(g));
    text << g.first.to_string() << " x " << g.second.to_string() << "  degree " << g.degree << "  count " << g.count
         << "\n";
  }

  // the Weyl group is transitive on conic classes, so the partners of the
  // pencil of lines through p1 classify finite pairs up to symmetry
  IntVector m(static_cast<std::size_t>(rank), 0);
  m[0] = 1;
  const auto pencil = DivisorClass::from_multiplicities(model, 1, m);
  std::map<OrbitSignature, std::set<Int>> partners;
  for (const auto& p : finite_partners(pencil, enumerate_conic(rank), enumerate_exceptional(rank)))
    partners[orbit_signature(p.partner)].insert(p.degree);
  json partner_json = json::array();
  text << "partners of " << pencil << ": " << partners.size() << " signature families\n";
  for (const auto& [sig, degrees] : partners) {
    partner_json.push_back({{"signature", io::to_json(sig)}, {"degrees", degrees}});
    text << "  " << sig.to_string() << "  degrees";
    for (Int d : degrees) text << ' ' << d;
    text << "\n";
  }
  out.emit(io::envelope("pairs", {{"rank", rank}},
                        {{"model", model.name()},
                         {"max_degree_bound", max_degree_bound(rank)},
                         {"groups", result},
                         {"reference_class", io::to_json(pencil)},
                         {"reference_partners", partner_json}}),
           text.str());
  return kExitOk;
}

int run_cones(const std::string& model_kind, int rank, const Output& out) {
  const auto model = model_kind == "product" ? SurfaceModel::product_p1(rank) : SurfaceModel::blowup_p2(rank);
  const auto rep = surface_cone_report(model);
  std::ostringstream text;
  text << model.name() << "  " << basis_line(model) << "\n"
       << "picard number: " << rep.picard_number << "\n"
       << "psef generators: " << rep.psef.generators().size() << "\n"
       << "nef extremal rays: " << rep.nef.generators().size() << "\n"
       << "nef = psef: " << (rep.equal ? "yes" : "no") << "\n"
       << "mori cone simplicial: " << (rep.mori_simplicial ? "yes" : "no") << "\n";
  json result = io::to_json(rep);
  result["basis"] = io::basis(model);
  result["model"] = model.name();
  out.emit(io::envelope("cones", {{"model", model_kind}, {"rank", rank}}, result), text.str());
  return kExitOk;
}

int run_doublecover(const std::vector<Int>& type, const Output& out) {
  const DoubleCoverSpec spec(type);
  const auto rho = expected_picard_number(spec);
  std::ostringstream text;
  text << "double cover of (P1)^" << spec.n() << " branched in " << spec.branch_class() << "\n"
       << "Q-Fano: " << (is_fano(spec) ? "yes" : "no") << "\n"
       << "(-K)^n: " << anticanonical_power(spec) << "\n"
       << "Picard number: " << (rho ? std::to_string(*rho) : "not determined") << "\n";
  out.emit(io::envelope("doublecover", {{"type", type}}, io::to_json(spec)), text.str());
  return kExitOk;
}

int run_singular(const std::string& input, const std::string& point, const Output& out) {
  std::ifstream in(input);
  if (!in) throw ParseError("cannot read " + input);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  const auto poly = io::poly_from_json(doc);
  const auto pt = parse_point(point);
  const bool singular = cover_singular_at(poly, pt);
  json gradient = json::array();
  for (std::size_t v = 0; v < 2 * static_cast<std::size_t>(poly.n()); ++v)
    gradient.push_back(to_string(partial_derivative(poly, v).evaluate(pt)));
  std::ostringstream text;
  text << "cover " << (singular ? "singular" : "smooth") << " over " << point << "\n"
       << "gradient: " << gradient.dump() << "\n";
  out.emit(io::envelope("singular", {{"input", input}, {"point", point}},
                        {{"singular", singular}, {"gradient", gradient}, {"point", io::to_json(pt)}}),
           text.str());
  return kExitOk;
}

int run_verify(const std::string& id, const Output& out, unsigned threads) {
  const auto rep = run_verification(id, threads);
  std::ostringstream text;
  for (const auto& c : rep.details())
    text << (c.ok() ? "[ok]   " : "[FAIL] ") << c.name << (c.ok() ? "" : "  expected " + c.expected.dump() +
                                                                          " got " + c.got.dump())
         << "\n";
  text << rep.lemma_id() << ": " << (rep.passed() ? "passed" : "FAILED") << "\n";
  out.emit(io::envelope("verify", {{"lemma_id", id}}, rep.to_json()), text.str());
  return rep.passed() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Picard lattice, conic bundle and cone computations on Del Pezzo surfaces"};
  app.require_subcommand(1);
  const unsigned threads = threads_from_env();

  Output out;
  int rank = 0;

  auto* enumerate = app.add_subcommand("enumerate", "List exceptional or conic-bundle classes");
  std::string kind;
  enumerate->add_option("kind", kind, "exceptional | conic")->required()->check(CLI::IsMember({"exceptional", "conic"}));
  enumerate->add_option("-r,--rank", rank, "Number of blown-up points r")->required()->check(CLI::Range(0, 8));
  add_output_flags(enumerate, out);

  auto* pairs = app.add_subcommand("pairs", "Classify finite pairs of conic bundles");
  pairs->add_option("-r,--rank", rank, "Number of blown-up points r")->required()->check(CLI::Range(1, 8));
  add_output_flags(pairs, out);

  auto* cones = app.add_subcommand("cones", "Nef and pseudo-effective cones of a surface model");
  std::string model_kind = "blowup";
  cones->add_option("--model", model_kind, "blowup | product")->check(CLI::IsMember({"blowup", "product"}));
  cones->add_option("-r,--rank", rank, "r for blowup, n = 2 for product")->required()->check(CLI::Range(0, 8));
  add_output_flags(cones, out);

  auto* cover = app.add_subcommand("doublecover", "Invariants of a double cover of (P1)^n");
  std::vector<Int> type;
  cover->add_option("--type", type, "Half branch multidegree d_1,..,d_n")->required()->delimiter(',')->check(
      CLI::NonNegativeNumber);
  add_output_flags(cover, out);

  auto* singular = app.add_subcommand("singular", "Jacobian test for a branch polynomial at a point");
  std::string input;
  std::string point;
  singular->add_option("--input", input, "Branch polynomial JSON")->required();
  singular->add_option("--point", point, "Point as a0:b0,a1:b1,...")->required();
  add_output_flags(singular, out);

  auto* verify = app.add_subcommand("verify", "Run a named verification suite");
  std::string lemma;
  std::vector<std::string> ids;
  for (const auto& [id, _] : verify::suites()) ids.push_back(id);
  verify->add_option("lemma_id", lemma, "Suite id")->required()->check(CLI::IsMember(ids));
  add_output_flags(verify, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*enumerate) return run_enumerate(kind, rank, out);
    if (*pairs) return run_pairs(rank, out, threads);
    if (*cones) return run_cones(model_kind, rank, out);
    if (*cover) return run_doublecover(type, out);
    if (*singular) return run_singular(input, point, out);
    if (*verify) return run_verify(lemma, out, threads);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
