#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <sstream>
#include <cstdio>
#include <iostream>

#include "losr/accept.hpp"
#include "losr/serialize.hpp"

namespace {

using namespace losr;

constexpr int kOk = 0;        // success / Free as queried
constexpr int kNegative = 1;  // NonFree / infeasible / validation failure
constexpr int kUsage = 2;     // usage or parse error
constexpr int kInconclusive = 3;

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 1;
  bool json = false;
  int iters = 50000;
  int restarts = 20;
};

void emit(const Options& opt, const json& j, const std::string& text) {
  if (opt.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

Party parse_party(const std::string& s) {
  if (s == "A") return Party::A;
  if (s == "B") return Party::B;
  throw CLI::ValidationError("party must be A or B");
}

// Canonical transform grammar: "sq-encode:A:2" / "sq-decode:B:3"; several
// may be chained with ','.
LosrTransform named_transform(const std::string& spec, const PartyWiring& w,
                              bool* any = nullptr) {
  LosrTransform total = identity_transform();
  PartyWiring cur = w;
  std::stringstream ss(spec);
  std::string item;
  bool first = true;
  while (std::getline(ss, item, ',')) {
    auto c1 = item.find(':');
    auto c2 = item.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument("transform grammar is <name>:<party>:<dim>");
    const std::string name = item.substr(0, c1);
    Party party = parse_party(item.substr(c1 + 1, c2 - c1 - 1));
    const int d = std::stoi(item.substr(c2 + 1));
    LosrTransform t;
    if (name == "sq-encode")
      t = sq_encode(party, d);
    else if (name == "sq-decode")
      t = sq_decode(party, d);
    else
      throw std::invalid_argument("unknown transform: " + name);
    total = first ? t : compose(t, total, w);
    cur = transformed_wiring(t, cur);
    first = false;
  }
  if (any) *any = !first;
  return total;
}

// Decoder for a chain of sq-encode steps: matching sq-decode in reverse.
LosrTransform inverse_of(const std::string& spec, const PartyWiring& encoded) {
  std::vector<std::string> items;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(item);
  std::string dec_spec;
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    if (it->rfind("sq-encode:", 0) != 0)
      throw std::invalid_argument("no automatic decoder for " + *it);
    if (!dec_spec.empty()) dec_spec += ",";
    dec_spec += "sq-decode:" + it->substr(std::string("sq-encode:").size());
  }
  return named_transform(dec_spec, encoded);
}

Game load_game(const std::string& name) {
  if (name == "chsh") return chsh_game();
  if (name.rfind("witness:", 0) == 0) {
    json j = load_json(name.substr(8));
    return witness_game_on_states(matrix_from_json(j.at("W")), j.at("dim_a"),
                                  j.at("dim_b"));
  }
  if (name.rfind("pushforward:", 0) == 0) {
    // The base game spec may itself contain ':' (witness:<file>), so split
    // at the start of the encoder chain rather than at the first colon.
    const std::string rest = name.substr(12);
    auto sep = rest.find(":sq-");
    if (sep == std::string::npos)
      throw std::invalid_argument("grammar: pushforward:<game>:<encoder>");
    Game base = load_game(rest.substr(0, sep));
    const std::string enc_spec = rest.substr(sep + 1);
    LosrTransform enc = named_transform(enc_spec, base.wiring);
    PartyWiring ew = transformed_wiring(enc, base.wiring);
    return pushforward(base, enc, inverse_of(enc_spec, ew));
  }
  return game_from_json(load_json(name));
}

int cmd_validate(const Options& opt, const std::string& file) {
  Resource r = resource_from_json(load_json(file));
  auto violations = validate(r, opt.tol);
  json jv = json::array();
  std::string text;
  for (const auto& v : violations) {
    jv.push_back({{"check", v.check}, {"magnitude", v.magnitude}});
    text += v.check + " (magnitude " + std::to_string(v.magnitude) + ")\n";
  }
  emit(opt, {{"command", "validate"}, {"violations", jv}},
       violations.empty() ? "valid" : text + "invalid");
  return violations.empty() ? kOk : kNegative;
}

int cmd_code(const Options& opt, const std::string& file,
             const std::string& party_s, const std::string& scheme,
             const std::string& out_file, bool decode) {
  if (scheme != "sq") throw std::invalid_argument("unknown scheme: " + scheme);
  Party party = parse_party(party_s);
  Resource r = resource_from_json(load_json(file));
  const System& out_sys = party == Party::A ? r.wiring.a_out : r.wiring.b_out;
  LosrTransform t;
  if (decode) {
    const int d = static_cast<int>(std::lround(std::sqrt(out_sys.dim)));
    t = sq_decode(party, d);
  } else {
    t = sq_encode(party, out_sys.dim);
  }
  Resource out = apply(t, r);
  save_json(out_file, to_json(out));
  emit(opt,
       {{"command", decode ? "decode" : "encode"},
        {"type", to_string(out.wiring.global_type())},
        {"output", out_file}},
       to_string(out.wiring.global_type()) + " -> " + out_file);
  return kOk;
}

int cmd_eval(const Options& opt, const std::string& game_name,
             const std::string& file) {
  Game g = load_game(game_name);
  Resource r = resource_from_json(load_json(file));
  if (!(r.wiring == g.wiring)) {
    std::cerr << "type mismatch: game wants "
              << to_string(g.wiring.global_type()) << ", resource is "
              << to_string(r.wiring.global_type())
              << "; convert explicitly with the encode command\n";
    return kUsage;
  }
  const double v = evaluate(g, r);
  emit(opt, {{"command", "eval"}, {"game", game_name}, {"value", v}},
       "value " + std::to_string(v));
  return kOk;
}

int report_exit(const Options& opt, const std::string& cmd,
                const MembershipReport& rep) {
  json j = to_json(rep);
  j["command"] = cmd;
  emit(opt, j, to_string(rep.verdict) + ": " + rep.detail);
  switch (rep.verdict) {
    case Verdict::Free: return kOk;
    case Verdict::NonFree: return kNegative;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kUsage;
}

int cmd_membership(const Options& opt, const std::string& kind,
                   const std::string& file) {
  if (kind == "local")
    return report_exit(opt, "membership",
                       box_is_local(box_from_json(load_json(file)), opt.tol));
  if (kind == "ppt") {
    json j = load_json(file);
    return report_exit(
        opt, "membership",
        state_is_ppt(matrix_from_json(j.at("rho")), j.at("dim_a"),
                     j.at("dim_b"), opt.tol));
  }
  if (kind == "lhs")
    return report_exit(
        opt, "membership",
        assemblage_is_unsteerable(assemblage_from_json(load_json(file)),
                                  std::max(opt.tol, 1e-7), opt.iters));
  throw std::invalid_argument("membership kind must be local, ppt, or lhs");
}

int cmd_convert_box(const Options& opt, const std::string& p_file,
                    const std::string& q_file) {
  return report_exit(opt, "convert-box",
                     box_convertible(box_from_json(load_json(p_file)),
                                     box_from_json(load_json(q_file)),
                                     opt.tol));
}

int cmd_type_order(const Options& opt, const std::string& t,
                   const std::string& u) {
  EncodeVerdict v;
  if (t.size() > 4 || u.size() > 4)  // "X->Y" vs "XX->YY"
    v = global_encodes_sufficient(parse_global_type(t), parse_global_type(u));
  else
    v = partition_encodes(parse_partition_type(t), parse_partition_type(u));
  emit(opt,
       {{"command", "type-order"},
        {"verdict", to_string(v.value)},
        {"provenance", v.provenance}},
       to_string(v.value) + " (" + v.provenance + ")");
  switch (v.value) {
    case Encode::Yes: return kOk;
    case Encode::No: return kNegative;
    case Encode::Unknown: return kInconclusive;
  }
  return kUsage;
}

int cmd_acceptance(const Options& opt) {
  auto results = accept::run_all(opt.seed);
  json jr = json::array();
  for (const auto& r : results) {
    jr.push_back({{"name", r.name},
                  {"pass", r.pass},
                  {"note", r.note},
                  {"seconds", r.seconds}});
    if (!opt.json)
      std::printf("[%s] %-62s %6.1fs%s%s\n", r.pass ? "PASS" : "FAIL",
                  r.name.c_str(), r.seconds, r.note.empty() ? "" : "  ",
                  r.note.c_str());
  }
  const bool ok = accept::all_pass(results);
  if (opt.json)
    std::cout << json{{"command", "acceptance"}, {"pass", ok},
                      {"criteria", jr}}
                     .dump(2)
              << "\n";
  return ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typed bipartite nonsignaling resources: validation, "
               "semiquantum encoding, games, and free-set membership"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--tol", opt.tol, "numeric tolerance")->capture_default_str();
  app.add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
  app.add_flag("--json", opt.json, "JSON output");
  app.add_option("--iters", opt.iters, "iteration cap")->capture_default_str();
  app.add_option("--restarts", opt.restarts, "see-saw restarts")
      ->capture_default_str();
  app.fallthrough();

  std::string file, file2, party, scheme = "sq", out_file, game_name;

  auto* validate_cmd = app.add_subcommand("validate", "check a resource file");
  validate_cmd->add_option("resource", file)->required();

  auto* encode_cmd = app.add_subcommand("encode", "semiquantum-encode a party");
  encode_cmd->add_option("resource", file)->required();
  encode_cmd->add_option("party", party)->required();
  encode_cmd->add_option("scheme", scheme)->capture_default_str();
  encode_cmd->add_option("-o,--out", out_file, "output file")->required();

  auto* decode_cmd = app.add_subcommand("decode", "invert the encoding");
  decode_cmd->add_option("resource", file)->required();
  decode_cmd->add_option("party", party)->required();
  decode_cmd->add_option("scheme", scheme)->capture_default_str();
  decode_cmd->add_option("-o,--out", out_file, "output file")->required();

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a game on a resource");
  eval_cmd->add_option("game", game_name)->required();
  eval_cmd->add_option("resource", file)->required();

  auto* mem_cmd = app.add_subcommand("membership", "free-set membership");
  std::string kind;
  mem_cmd->add_option("kind", kind, "local | ppt | lhs")->required();
  mem_cmd->add_option("file", file)->required();

  auto* conv_cmd = app.add_subcommand("convert-box", "box convertibility");
  conv_cmd->add_option("p", file)->required();
  conv_cmd->add_option("q", file2)->required();

  auto* order_cmd = app.add_subcommand("type-order", "encodability query");
  std::string type_t, type_u;
  order_cmd->add_option("t", type_t)->required();
  order_cmd->add_option("u", type_u)->required();

  auto* acc_cmd = app.add_subcommand("acceptance", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(opt, file);
    if (*encode_cmd) return cmd_code(opt, file, party, scheme, out_file, false);
    if (*decode_cmd) return cmd_code(opt, file, party, scheme, out_file, true);
    if (*eval_cmd) return cmd_eval(opt, game_name, file);
    if (*mem_cmd) return cmd_membership(opt, kind, file);
    if (*conv_cmd) return cmd_convert_box(opt, file, file2);
    if (*order_cmd) return cmd_type_order(opt, type_t, type_u);
    if (*acc_cmd) return cmd_acceptance(opt);
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}
