#include "losr/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace losr {

json to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
  const int rows = j.at("rows"), cols = j.at("cols");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<int>(re.size()) != rows * cols ||
      static_cast<int>(im.size()) != rows * cols)
    throw std::invalid_argument("matrix entry count mismatch");
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k)
      m(i, k) = Complex(re[i * cols + k].get<double>(),
                        im[i * cols + k].get<double>());
  return m;
}

std::string system_to_string(const System& s) {
  return to_string(s.kind) + ":" + std::to_string(s.dim);
}

System system_from_string(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos || colon + 1 >= s.size())
    throw std::invalid_argument("system grammar is <kind>:<dim>: " + s);
  const std::string kind = s.substr(0, colon);
  const int dim = std::stoi(s.substr(colon + 1));
  if (kind == "I") {
    if (dim != 1) throw std::invalid_argument("trivial systems have dim 1");
    return trivial_system();
  }
  if (kind == "C") return classical_system(dim);
  if (kind == "Q") return quantum_system(dim);
  throw std::invalid_argument("unknown system kind: " + kind);
}

json to_json(const PartyWiring& w) {
  return {{"A",
           {{"in", system_to_string(w.a_in)},
            {"out", system_to_string(w.a_out)}}},
          {"B",
           {{"in", system_to_string(w.b_in)},
            {"out", system_to_string(w.b_out)}}}};
}

PartyWiring wiring_from_json(const json& j) {
  PartyWiring w;
  w.a_in = system_from_string(j.at("A").at("in"));
  w.a_out = system_from_string(j.at("A").at("out"));
  w.b_in = system_from_string(j.at("B").at("in"));
  w.b_out = system_from_string(j.at("B").at("out"));
  return w;
}

json to_json(const ChoiOperator& c) {
  return {{"dim_out", c.dim_out},
          {"dim_in", c.dim_in},
          {"matrix", to_json(c.matrix)}};
}

ChoiOperator choi_from_json(const json& j) {
  ChoiOperator c;
  c.dim_out = j.at("dim_out");
  c.dim_in = j.at("dim_in");
  c.matrix = matrix_from_json(j.at("matrix"));
  if (c.matrix.rows() != c.side() || c.matrix.cols() != c.side())
    throw std::invalid_argument("Choi matrix side mismatch");
  return c;
}

json to_json(const Resource& r) {
  return {{"wiring", to_json(r.wiring)}, {"choi", to_json(r.choi.matrix)}};
}

Resource resource_from_json(const json& j) {
  Resource r;
  r.wiring = wiring_from_json(j.at("wiring"));
  r.choi.dim_out = r.wiring.dim_out();
  r.choi.dim_in = r.wiring.dim_in();
  r.choi.matrix = matrix_from_json(j.at("choi"));
  if (r.choi.matrix.rows() != r.choi.side() ||
      r.choi.matrix.cols() != r.choi.side())
    throw std::invalid_argument("Choi matrix does not match the wiring dims");
  return r;
}

json to_json(const CorrelationTable& t) {
  json px = json::array();
  for (int x = 0; x < t.nx; ++x) {
    json py = json::array();
    for (int y = 0; y < t.ny; ++y) {
      json pa = json::array();
      for (int a = 0; a < t.na; ++a) {
        json pb = json::array();
        for (int b = 0; b < t.nb; ++b) pb.push_back(t.at(a, b, x, y));
        pa.push_back(pb);
      }
      py.push_back(pa);
    }
    px.push_back(py);
  }
  return {{"P", px}};
}

CorrelationTable box_from_json(const json& j) {
  const auto& p = j.at("P");
  const int nx = static_cast<int>(p.size());
  if (nx == 0) throw std::invalid_argument("empty box table");
  const int ny = static_cast<int>(p[0].size());
  const int na = static_cast<int>(p[0][0].size());
  const int nb = static_cast<int>(p[0][0][0].size());
  CorrelationTable t = CorrelationTable::zeros(na, nb, nx, ny);
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
          t.at(a, b, x, y) = p.at(x).at(y).at(a).at(b).get<double>();
  return t;
}

json to_json(const Assemblage& a) {
  json sx = json::array();
  for (const auto& row : a.sigma) {
    json sa = json::array();
    for (const auto& m : row) sa.push_back(to_json(m));
    sx.push_back(sa);
  }
  return {{"sigma", sx}};
}

Assemblage assemblage_from_json(const json& j) {
  Assemblage a;
  for (const auto& row : j.at("sigma")) {
    a.sigma.emplace_back();
    for (const auto& m : row) a.sigma.back().push_back(matrix_from_json(m));
  }
  return a;
}

namespace {

const char* pre_plan_tag(PrePlan p) {
  switch (p) {
    case PrePlan::Identity: return "identity";
    case PrePlan::Explicit: return "explicit";
    case PrePlan::RouteFactorToMemory: return "route-factor-to-memory";
    case PrePlan::FeedEntangledHalf: return "feed-entangled-half";
  }
  return "?";
}

PrePlan pre_plan_from(const std::string& s) {
  if (s == "identity") return PrePlan::Identity;
  if (s == "explicit") return PrePlan::Explicit;
  if (s == "route-factor-to-memory") return PrePlan::RouteFactorToMemory;
  if (s == "feed-entangled-half") return PrePlan::FeedEntangledHalf;
  throw std::invalid_argument("unknown pre plan: " + s);
}

const char* post_plan_tag(PostPlan p) {
  switch (p) {
    case PostPlan::Identity: return "identity";
    case PostPlan::Explicit: return "explicit";
    case PostPlan::AppendMemoryToOutput: return "append-memory-to-output";
  }
  return "?";
}

PostPlan post_plan_from(const std::string& s) {
  if (s == "identity") return PostPlan::Identity;
  if (s == "explicit") return PostPlan::Explicit;
  if (s == "append-memory-to-output") return PostPlan::AppendMemoryToOutput;
  throw std::invalid_argument("unknown post plan: " + s);
}

const char* change_mode_tag(SystemChange::Mode m) {
  switch (m) {
    case SystemChange::Mode::Keep: return "keep";
    case SystemChange::Mode::Set: return "set";
    case SystemChange::Mode::PrependFactor: return "prepend-factor";
    case SystemChange::Mode::AppendFactor: return "append-factor";
    case SystemChange::Mode::DropFront: return "drop-front";
  }
  return "?";
}

SystemChange::Mode change_mode_from(const std::string& s) {
  if (s == "keep") return SystemChange::Mode::Keep;
  if (s == "set") return SystemChange::Mode::Set;
  if (s == "prepend-factor") return SystemChange::Mode::PrependFactor;
  if (s == "append-factor") return SystemChange::Mode::AppendFactor;
  if (s == "drop-front") return SystemChange::Mode::DropFront;
  throw std::invalid_argument("unknown system change: " + s);
}

json change_to_json(const SystemChange& c) {
  json j = {{"mode", change_mode_tag(c.mode)}};
  if (c.mode != SystemChange::Mode::Keep &&
      c.mode != SystemChange::Mode::DropFront)
    j["sys"] = system_to_string(c.sys);
  return j;
}

SystemChange change_from_json(const json& j) {
  SystemChange c;
  c.mode = change_mode_from(j.at("mode"));
  if (j.contains("sys")) c.sys = system_from_string(j.at("sys"));
  return c;
}

json comb_to_json(const LocalComb& c) {
  json j = {{"memory", c.memory},
            {"pre_plan", pre_plan_tag(c.pre_plan)},
            {"post_plan", post_plan_tag(c.post_plan)},
            {"in_change", change_to_json(c.in_change)},
            {"out_change", change_to_json(c.out_change)}};
  if (c.pre_plan == PrePlan::Explicit) j["pre"] = to_json(c.pre);
  if (c.post_plan == PostPlan::Explicit) j["post"] = to_json(c.post);
  if (c.expect_out.check)
    j["expect_out"] = {{"kind", to_string(c.expect_out.kind)},
                       {"dim", c.expect_out.dim}};
  return j;
}

LocalComb comb_from_json(const json& j) {
  LocalComb c;
  c.memory = j.value("memory", 1);
  c.pre_plan = pre_plan_from(j.at("pre_plan"));
  c.post_plan = post_plan_from(j.at("post_plan"));
  if (j.contains("pre")) c.pre = choi_from_json(j.at("pre"));
  if (j.contains("post")) c.post = choi_from_json(j.at("post"));
  c.in_change = change_from_json(j.at("in_change"));
  c.out_change = change_from_json(j.at("out_change"));
  if (j.contains("expect_out")) {
    c.expect_out.check = true;
    const std::string k = j.at("expect_out").at("kind");
    if (k == "I") c.expect_out.kind = Kind::Trivial;
    else if (k == "C") c.expect_out.kind = Kind::Classical;
    else if (k == "Q") c.expect_out.kind = Kind::Quantum;
    else throw std::invalid_argument("unknown kind: " + k);
    c.expect_out.dim = j.at("expect_out").value("dim", 0);
  }
  return c;
}

}  // namespace

json to_json(const LosrTransform& t) {
  json branches = json::array();
  for (const auto& br : t.branches)
    branches.push_back({{"p", br.p},
                        {"A", comb_to_json(br.a)},
                        {"B", comb_to_json(br.b)}});
  return {{"branches", branches}};
}

LosrTransform transform_from_json(const json& j) {
  LosrTransform t;
  for (const auto& br : j.at("branches")) {
    Branch b;
    b.p = br.at("p");
    b.a = comb_from_json(br.at("A"));
    b.b = comb_from_json(br.at("B"));
    t.branches.push_back(std::move(b));
  }
  return t;
}

json to_json(const Game& g) {
  auto family = [](const std::vector<CMatrix>& ms) {
    json out = json::array();
    for (const auto& m : ms) out.push_back(to_json(m));
    return out;
  };
  return {{"type", to_string(g.wiring.global_type())},
          {"wiring", to_json(g.wiring)},
          {"analyzer",
           {{"prep_a", family(g.analyzer.prep_a)},
            {"prep_b", family(g.analyzer.prep_b)},
            {"povm_a", family(g.analyzer.povm_a)},
            {"povm_b", family(g.analyzer.povm_b)}}},
          {"payoff",
           {{"na", g.payoff.na},
            {"nb", g.payoff.nb},
            {"nx", g.payoff.nx},
            {"ny", g.payoff.ny},
            {"f", g.payoff.f}}}};
}

Game game_from_json(const json& j) {
  Game g;
  g.wiring = wiring_from_json(j.at("wiring"));
  if (j.contains("type") &&
      !(parse_global_type(j.at("type").get<std::string>()) ==
        g.wiring.global_type()))
    throw std::invalid_argument("type string disagrees with the wiring");
  auto family = [](const json& arr) {
    std::vector<CMatrix> out;
    for (const auto& m : arr) out.push_back(matrix_from_json(m));
    return out;
  };
  const auto& z = j.at("analyzer");
  g.analyzer.prep_a = family(z.at("prep_a"));
  g.analyzer.prep_b = family(z.at("prep_b"));
  g.analyzer.povm_a = family(z.at("povm_a"));
  g.analyzer.povm_b = family(z.at("povm_b"));
  g.analyzer.prep_a_complete = spans_operator_space(
      g.analyzer.prep_a, g.wiring.a_in.dim, g.wiring.a_in.kind != Kind::Quantum);
  g.analyzer.prep_b_complete = spans_operator_space(
      g.analyzer.prep_b, g.wiring.b_in.dim, g.wiring.b_in.kind != Kind::Quantum);
  g.analyzer.povm_a_complete = spans_operator_space(
      g.analyzer.povm_a, g.wiring.a_out.dim,
      g.wiring.a_out.kind != Kind::Quantum);
  g.analyzer.povm_b_complete = spans_operator_space(
      g.analyzer.povm_b, g.wiring.b_out.dim,
      g.wiring.b_out.kind != Kind::Quantum);
  const auto& p = j.at("payoff");
  g.payoff = PayoffTable::zeros(p.at("na"), p.at("nb"), p.at("nx"), p.at("ny"));
  g.payoff.f = p.at("f").get<std::vector<double>>();
  if (g.payoff.f.size() !=
      size_t(g.payoff.na) * g.payoff.nb * g.payoff.nx * g.payoff.ny)
    throw std::invalid_argument("payoff entry count mismatch");
  return g;
}

json to_json(const MembershipReport& r) {
  json cert;
  switch (r.verdict) {
    case Verdict::Free: {
      cert = {{"kind", "decomposition"}, {"residual", r.residual}};
      if (!r.weights.empty()) cert["weights"] = r.weights;
      if (!r.lhs_states.empty()) {
        json states = json::array();
        for (const auto& m : r.lhs_states) states.push_back(to_json(m));
        cert["lhs_states"] = states;
      }
      break;
    }
    case Verdict::NonFree: {
      cert = {{"kind", "dual"}, {"bound", r.bound}, {"value", r.value}};
      if (!r.dual.empty()) cert["F"] = r.dual;
      if (r.witness.size() > 0) cert["witness"] = to_json(r.witness);
      if (!r.dual_ops.empty()) {
        json ops = json::array();
        for (const auto& row : r.dual_ops) {
          json inner = json::array();
          for (const auto& m : row) inner.push_back(to_json(m));
          ops.push_back(inner);
        }
        cert["F_ops"] = ops;
      }
      break;
    }
    case Verdict::Inconclusive:
      cert = {{"kind", "none"}};
      break;
  }
  return {{"verdict", to_string(r.verdict)},
          {"certificate", cert},
          {"detail", r.detail}};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for write");
  out << j.dump(2) << '\n';
}

}  // namespace losr
