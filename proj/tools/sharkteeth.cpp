// sharkteeth: command-line front end for the teeth-space library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "sharkteeth/error.hpp"
#include "sharkteeth/general.hpp"
#include "sharkteeth/maps.hpp"
#include "sharkteeth/render.hpp"
#include "sharkteeth/verify.hpp"
#include "sharkteeth/words.hpp"

using namespace shark;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kResource = 3 };

struct Global {
  std::string sequence_file;
  std::size_t table_depth = 3;
  std::uint64_t seed = 1;
  std::string output;
};

struct Context {
  Space space = Space::canonical();
  std::optional<GenerationTable> table;
};

Context make_context(const Global& g) {
  Context c;
  if (!g.sequence_file.empty()) {
    GeneralSequence seq = load_sequence_file(g.sequence_file);
    c.table = build_table(seq, g.table_depth, g.sequence_file);
    c.space = c.table->to_space();
  }
  return c;
}

void emit(const Global& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(g.output, std::ios::binary);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot write '" + g.output + "'");
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

int report(const Global& g, const std::vector<CheckReport>& reports) {
  std::string out;
  bool ok = true;
  for (const auto& r : reports) {
    CheckReport copy = r;
    if (copy.seed == 0) copy.seed = g.seed;
    out += copy.to_json_line() + "\n";
    ok = ok && r.pass;
  }
  emit(g, out);
  return ok ? kOk : kFailed;
}

json generation_json(const Space& space, std::size_t i) {
  const Generation& gen = space.generation(i);
  json j{{"generation", i},
         {"tooth_exp", gen.tooth_exp},
         {"first_row", to_string(gen.first_row)},
         {"rows", to_string(gen.rows)},
         {"last_row", to_string(gen.last_row())}};
  if (gen.has_successor) {
    j["s"] = to_string(gen.s);
    j["s_exact"] = gen.s_exact;
    j["pieces"] = to_string(gen.pieces());
    j["bone_piece"] = gen.bone_piece();
  } else {
    j["s"] = nullptr;
  }
  return j;
}

Rational parse_lambda(const std::string& text) {
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos)
    fail(ErrorCode::Parse, "lambda must be an exact rational p/q, got '" + text + "'");
  return parse_rational(text);
}

std::size_t budget_from_env() {
  const char* env = std::getenv("SHARKTEETH_BUDGET");
  if (!env || !*env) return 100'000;
  try {
    return static_cast<std::size_t>(std::stoull(env));
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, std::string("SHARKTEETH_BUDGET is not a number: ") + env);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on the teeth space M and its ten-map iterated function system.\n"
               "Words are comma-separated map names in application order: \"g1,f1\" applies g1 first."};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--sequence", g.sequence_file, "Sequence file (prefix/tail format); default: canonical");
  app.add_option("--table-depth", g.table_depth, "Generations built for --sequence (0..d plus one target)");
  app.add_option("--seed", g.seed, "Seed for randomized checks");

  std::function<int()> action;
  auto on = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("-o,--output", g.output, "Write to this file"); };

  // stats
  long gen = 0;
  auto* stats = app.add_subcommand("stats", "Generation record as JSON");
  stats->add_option("--gen", gen, "Generation index")->required()->check(CLI::NonNegativeNumber);
  out_opt(stats);
  on(stats, [&] {
    Context c = make_context(g);
    json j = generation_json(c.space, static_cast<std::size_t>(gen));
    if (!c.table) {
      GenerationStats st = generation_stats(CanonicalSequence{}, gen);
      j["search_agrees"] = to_string(st.first_row) == j["first_row"] && to_string(st.rows) == j["rows"];
    } else {
      j["original_value"] = c.table->entries.at(static_cast<std::size_t>(gen)).original_value;
    }
    emit(g, j.dump(2));
    return kOk;
  });

  // table
  std::size_t table_gens = 4;
  auto* table = app.add_subcommand("table", "Generation records 0..n-1 as JSON lines");
  table->add_option("--gens", table_gens, "Number of generations");
  out_opt(table);
  on(table, [&] {
    Context c = make_context(g);
    std::string out;
    std::size_t n = std::min(table_gens, c.space.generation_count());
    for (std::size_t i = 0; i < n; ++i) out += generation_json(c.space, i).dump() + "\n";
    if (c.table) out += json{{"single_base_row", c.table->single_base_row}}.dump() + "\n";
    emit(g, out);
    return kOk;
  });

  // apply
  std::string word_text, point_text, format = "text";
  auto* apply = app.add_subcommand("apply", "Image of a point under a word");
  apply->add_option("--word", word_text, "Word in application order")->required();
  apply->add_option("--point", point_text, "bone:t or row:k:t with t = p/q")->required();
  apply->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  on(apply, [&] {
    Context c = make_context(g);
    MPoint p = parse_point(point_text);
    MPoint img = apply_word(c.space, parse_word(word_text), p);
    if (format == "json") {
      PlanePoint e = embed(c.space, img);
      emit(g, json{{"point", to_string(img)}, {"x", to_string(e.x)}, {"y", to_string(e.y)}}.dump());
    } else {
      emit(g, to_string(img));
    }
    return kOk;
  });

  // render
  std::size_t depth = 1;
  int figure = 1;
  std::size_t fig_gen = 0;
  std::string tooth = "0", overlay;
  std::optional<std::string> fig_row;
  auto* rend = app.add_subcommand("render", "SVG of a truncation (figure 1) or of one tooth and its image (figure 2)");
  rend->add_option("--depth", depth, "Truncation depth for figure 1");
  rend->add_option("--figure", figure, "1: truncation, 2: tooth pieces and images")->check(CLI::Range(1, 2));
  rend->add_option("--gen", fig_gen, "Generation of the tooth (figure 2)");
  rend->add_option("--tooth", tooth, "Tooth index (figure 2)");
  rend->add_option("--row", fig_row, "Row of the tooth (figure 2; default first row of the generation)");
  rend->add_option("--overlay", overlay, "Word whose image of the truncation is drawn on top (figure 1)");
  out_opt(rend);
  on(rend, [&] {
    Context c = make_context(g);
    RenderSpec spec;
    if (figure == 1) {
      spec = figure_truncation(c.space, depth);
      if (!overlay.empty())
        spec.layers.push_back(
            Layer{apply_word(c.space, parse_word(overlay), truncate_M(c.space, depth)), "overlay", std::nullopt, ""});
    } else {
      std::optional<BigInt> row;
      if (fig_row) row = parse_bigint(*fig_row);
      spec = figure_tooth(c.space, fig_gen, parse_bigint(tooth), row);
    }
    emit(g, render(c.space, spec));
    return kOk;
  });

  // checks
  std::size_t check_depth = 1;
  auto* cover = app.add_subcommand("cover-check", "Union of the ten images of trunc(d) against trunc(d+1)");
  cover->add_option("--depth", check_depth, "Truncation depth");
  out_opt(cover);
  on(cover, [&] { return report(g, {check_cover(make_context(g).space, check_depth)}); });

  std::string family = "all";
  std::size_t trials = 200, max_len = 6, f_len = 3;
  auto* halving = app.add_subcommand("halving-check", "Diameter contraction of G/H words on segments and F words on trunc");
  halving->add_option("--family", family, "G, H, F or all")->check(CLI::IsMember({"G", "H", "F", "all"}));
  halving->add_option("--trials", trials, "Random segments per tent family");
  halving->add_option("--max-len", max_len, "Longest G/H word");
  halving->add_option("--f-len", f_len, "Longest F word");
  halving->add_option("--depth", check_depth, "Truncation for F words");
  out_opt(halving);
  on(halving, [&] {
    Context c = make_context(g);
    std::vector<CheckReport> rs;
    if (family == "G" || family == "all") rs.push_back(check_halving(c.space, Family::G, trials, max_len, g.seed));
    if (family == "H" || family == "all") rs.push_back(check_halving(c.space, Family::H, trials, max_len, g.seed + 1));
    if (family == "F" || family == "all")
      rs.push_back(check_halving(c.space, Family::F, 0, f_len, g.seed, check_depth));
    return report(g, rs);
  });

  auto* collapse = app.add_subcommand("collapse-check", "Forbidden length-2 words collapse trunc(d) to a point");
  collapse->add_option("--depth", check_depth, "Truncation depth");
  out_opt(collapse);
  on(collapse, [&] { return report(g, {check_collapse(make_context(g).space, check_depth)}); });

  std::vector<std::size_t> tooth_gens{0, 1};
  auto* tooth_chk = app.add_subcommand("tooth-check", "f1/f2 image of every tooth of the given generations");
  tooth_chk->add_option("--gen", tooth_gens, "Generations (repeatable)");
  out_opt(tooth_chk);
  on(tooth_chk, [&] {
    Context c = make_context(g);
    std::vector<CheckReport> rs;
    for (std::size_t i : tooth_gens) rs.push_back(check_tooth_image(c.space, i));
    return report(g, rs);
  });

  std::size_t cont_gen = 2;
  auto* cont = app.add_subcommand("continuity-check", "Branch agreement at every breakpoint");
  cont->add_option("--max-gen", cont_gen, "Last generation whose rows are checked");
  out_opt(cont);
  on(cont, [&] { return report(g, {check_continuity(make_context(g).space, cont_gen)}); });

  std::size_t denom = 64;
  auto* samp = app.add_subcommand("sampling-check", "Pointwise images of p/q parameters against the exact image");
  samp->add_option("--word", word_text, "Word in application order");
  samp->add_option("--depth", check_depth, "Truncation depth");
  samp->add_option("--denom", denom, "Largest parameter denominator");
  out_opt(samp);
  on(samp, [&] { return report(g, {sampling_oracle(make_context(g).space, parse_word(word_text), check_depth, denom)}); });

  // word calculus
  auto* cls = app.add_subcommand("classify", "Class of a word");
  cls->add_option("--word", word_text, "Word in application order")->required();
  on(cls, [&] {
    Word w = parse_word(word_text);
    WordClass wc = classify(w);
    emit(g, json{{"word", to_string(w)}, {"class", to_string(wc)}, {"kind", kind_name(wc.kind)}, {"k", wc.k}, {"n", wc.n}}
                .dump());
    return kOk;
  });

  auto* bnd = app.add_subcommand("bound", "Exact squared diameter bound of a word's class");
  bnd->add_option("--word", word_text, "Word in application order")->required();
  on(bnd, [&] {
    Context c = make_context(g);
    Word w = parse_word(word_text);
    WordClass wc = classify(w);
    std::size_t need = (wc.kind == WordKind::FafterG || wc.kind == WordKind::FafterH) ? wc.k : 0;
    Rational b = diameter_bound_sq(wc, LipschitzTable(c.space, need));
    emit(g, json{{"word", to_string(w)}, {"class", to_string(wc)}, {"bound_sq", to_string(b)}}.dump());
    return kOk;
  });

  std::string lambda_text;
  auto* plan = app.add_subcommand("plan", "n1, n2 and m for a Lebesgue number");
  plan->add_option("--lambda", lambda_text, "Lebesgue number p/q")->required();
  on(plan, [&] {
    Context c = make_context(g);
    Rational lambda = parse_lambda(lambda_text);
    LipschitzTable alpha(c.space, plan_n1(lambda));
    Plan p = plan_m(lambda, alpha);
    emit(g, json{{"lambda", to_string(lambda)}, {"n1", p.n1}, {"n2", p.n2}, {"m", p.m}}.dump());
    return kOk;
  });

  auto* cert = app.add_subcommand("certify", "Attractor certificate; exit 0 iff valid");
  cert->add_option("--lambda", lambda_text, "Lebesgue number p/q")->required();
  out_opt(cert);
  on(cert, [&] {
    Context c = make_context(g);
    Certificate cf = attractor_certificate(c.space, parse_lambda(lambda_text));
    emit(g, to_json(cf).dump(2));
    return cf.valid ? kOk : kFailed;
  });

  std::size_t oracle_len = 3;
  auto* oracle = app.add_subcommand("oracle", "Exact diameters of every word of each length against its class bound");
  oracle->add_option("--max-len", oracle_len, "Longest word length");
  oracle->add_option("--depth", check_depth, "Truncation depth");
  out_opt(oracle);
  on(oracle, [&] {
    Context c = make_context(g);
    std::size_t budget = budget_from_env();
    std::string out;
    bool ok = true;
    for (std::size_t len = 1; len <= oracle_len; ++len) {
      WordCheckReport r = exhaustive_word_check(c.space, len, check_depth, budget);
      json j{{"name", "word_oracle"},
             {"params", {{"length", len}, {"depth", check_depth}, {"words", r.words}}},
             {"pass", r.pass()},
             {"worst_ratio", to_string(r.worst_ratio)},
             {"worst_word", to_string(r.worst_word)},
             {"seed", g.seed}};
      if (r.first_failure) j["witness"] = {{"word", to_string(*r.first_failure)}, {"failures", r.failures}};
      out += j.dump() + "\n";
      ok = ok && r.pass();
    }
    emit(g, out);
    return ok ? kOk : kFailed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::ResourceLimit ? kResource : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
