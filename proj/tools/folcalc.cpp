#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>

#include "folcalc/foliation.hpp"
#include "folcalc/io.hpp"
#include "folcalc/moves.hpp"
#include "folcalc/openbook_norm.hpp"
#include "folcalc/realization.hpp"
#include "folcalc/tightness.hpp"

using namespace folcalc;

namespace {

enum Exit { kOk = 0, kValidation = 1, kObstruction = 2, kParse = 3, kUsage = 4 };

struct Failure {
  int code;
  std::string message;
};

FoliationMovie load_fol(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw Failure{kUsage, e.what()};
  }
  try {
    return parse_fol(text);
  } catch (const ParseError& e) {
    throw Failure{kParse, path + ":" + std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + e.message};
  }
}

MoveScript load_mov(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw Failure{kUsage, e.what()};
  }
  try {
    return parse_mov(text);
  } catch (const ParseError& e) {
    throw Failure{kParse, path + ":" + std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + e.message};
  }
}

void print_violations(const ValidationReport& r) {
  for (const auto& v : r.violations) {
    std::cout << "violation invariant=\"" << v.invariant << "\" location=\"" << v.location << "\" detail=\""
              << v.detail << "\"\n";
  }
}

FoliationMovie load_valid(const std::string& path) {
  auto m = load_fol(path);
  auto r = validate(m);
  if (!r.ok) {
    print_violations(r);
    throw Failure{kValidation, path + ": invalid movie (" + r.violations.front().invariant + ")"};
  }
  return m;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    try {
      write_file(out_path, text);
    } catch (const std::exception& e) {
      throw Failure{kUsage, e.what()};
    }
  }
}

int enumeration_guard() {
  const char* env = std::getenv("FOLCALC_KMAX_OVERRIDE");
  if (!env || !*env) return kEnumerationGuard;
  try {
    std::size_t used = 0;
    int v = std::stoi(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw Failure{kUsage, std::string("FOLCALC_KMAX_OVERRIDE must be an integer, got '") + env + "'"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"folcalc: circle-free open book foliations on the sphere"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string out_path, format = "text", file_a, file_b;
  int kmax = 0, k = 0, h_extra = 0, genus = 0, boundary = 1, genus2 = 0, boundary2 = 1, chi = 0, sn1 = 0, sn2 = 0;
  std::uint64_t seed = 0;
  bool tight_flag = false;

  auto* validate_cmd = app.add_subcommand("validate", "check every movie invariant");
  validate_cmd->add_option("files", files, ".fol files")->required();
  auto* counts_cmd = app.add_subcommand("counts", "singularity counts and Poincare-Hopf sum");
  counts_cmd->add_option("files", files, ".fol files")->required();
  auto* gpp_cmd = app.add_subcommand("gpp", "emit the graph G++");
  gpp_cmd->add_option("file", file_a, ".fol file")->required();
  gpp_cmd->add_option("--format", format, "dot or text")->check(CLI::IsMember({"dot", "text"}));
  auto* tight_cmd = app.add_subcommand("tight", "tree test, dividing circles and verdict");
  tight_cmd->add_option("files", files, ".fol files")->required();
  auto* realize_cmd = app.add_subcommand("realize", "build a move script from the trivial movie");
  realize_cmd->add_option("file", file_a, ".fol file")->required();
  realize_cmd->add_option("-o,--out", out_path, "script output (stdout if omitted)");
  auto* replay_cmd = app.add_subcommand("replay", "apply a move script");
  replay_cmd->add_option("script", file_a, ".mov file")->required();
  replay_cmd->add_option("-o,--out", out_path, "movie output (stdout if omitted)");
  auto* verify_cmd = app.add_subcommand("verify", "replay a script and compare with a movie");
  verify_cmd->add_option("movie", file_a, ".fol file")->required();
  verify_cmd->add_option("script", file_b, ".mov file")->required();
  auto* iso_cmd = app.add_subcommand("iso", "isomorphism test");
  iso_cmd->add_option("a", file_a, ".fol file")->required();
  iso_cmd->add_option("b", file_b, ".fol file")->required();
  auto* enum_cmd = app.add_subcommand("enumerate", "census of all movies up to k sources");
  enum_cmd->add_option("--kmax", kmax, "largest number of sources")->required()->check(CLI::PositiveNumber);
  enum_cmd->add_option("--out", out_path, "directory for census files")->required();
  auto* random_cmd = app.add_subcommand("random", "seeded random movie");
  random_cmd->add_option("--k", k, "number of sources")->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--seed", seed, "seed")->required();
  random_cmd->add_option("--h-extra", h_extra, "negative saddles turned positive")->check(CLI::NonNegativeNumber);
  random_cmd->add_option("-o,--out", out_path, "movie output (stdout if omitted)");

  auto* norm_cmd = app.add_subcommand("norm", "open book norm arithmetic");
  norm_cmd->require_subcommand(1);
  auto* page_cmd = norm_cmd->add_subcommand("page", "Euler characteristic and norm of a page");
  page_cmd->add_option("--genus", genus)->required();
  page_cmd->add_option("--boundary", boundary)->required();
  auto* sum_cmd = norm_cmd->add_subcommand("sum", "boundary connected sum of two pages");
  sum_cmd->add_option("--genus1", genus)->required();
  sum_cmd->add_option("--boundary1", boundary)->required();
  sum_cmd->add_option("--genus2", genus2)->required();
  sum_cmd->add_option("--boundary2", boundary2)->required();
  auto* ledger_cmd = norm_cmd->add_subcommand("ledger", "surgery Euler characteristic ledger");
  ledger_cmd->add_option("--chi", chi, "page Euler characteristic of B")->required();
  ledger_cmd->add_option("--format", format, "text or kv")->check(CLI::IsMember({"text", "kv"}));
  auto* add_cmd = norm_cmd->add_subcommand("additivity", "support norm of a connected sum");
  add_cmd->add_option("--sn1", sn1)->required();
  add_cmd->add_option("--sn2", sn2)->required();
  add_cmd->add_flag("--tight", tight_flag, "both summands are tight");
  auto* hg_cmd = norm_cmd->add_subcommand("hg", "Heegaard genus from the support norm");
  hg_cmd->add_option("--sn", sn1)->required();

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
    if (*validate_cmd) {
      int code = kOk;
      for (const auto& f : files) {
        auto m = load_fol(f);
        auto r = validate(m);
        if (files.size() > 1) std::cout << "file=" << f << "\n";
        if (r.ok) {
          std::cout << "ok\n";
        } else {
          print_violations(r);
          code = kValidation;
        }
      }
      return code;
    }
    if (*counts_cmd) {
      for (const auto& f : files) {
        auto m = load_fol(f);
        if (files.size() > 1) std::cout << "file=" << f << " ";
        std::cout << counts_line(singularity_counts(m)) << "\n";
      }
      return kOk;
    }
    if (*gpp_cmd) {
      auto g = build_gpp(load_valid(file_a));
      std::cout << (format == "dot" ? gpp_dot(g) : gpp_text(g));
      return kOk;
    }
    if (*tight_cmd) {
      for (const auto& f : files) {
        auto rep = tightness_verdict(load_valid(f));
        if (files.size() > 1) std::cout << "file=" << f << " ";
        std::cout << "tree=" << (rep.tree ? "true" : "false") << " dividing_circles=" << rep.dividing_circles
                  << " verdict=" << verdict_name(rep.verdict) << "\n";
      }
      return kOk;
    }
    if (*realize_cmd) {
      auto m = load_valid(file_a);
      auto r = realize(m);
      if (!r.realized()) {
        std::cerr << (r.open_case.empty() ? "obstruction: " + r.obstruction : "open case: " + r.open_case) << "\n";
        std::cout << "realized=false\n";
        return kObstruction;
      }
      emit(serialize_mov(*r.script), out_path);
      if (!out_path.empty() && out_path != "-") {
        std::cout << "realized=true steps=" << r.script->steps.size() << "\n";
      }
      return kOk;
    }
    if (*replay_cmd) {
      auto script = load_mov(file_a);
      try {
        emit(serialize_fol(apply_script(script)), out_path);
      } catch (const MoveError& e) {
        throw Failure{kValidation, file_a + ": step " + std::to_string(e.step + 1) + ": " + e.diagnostic};
      }
      return kOk;
    }
    if (*verify_cmd) {
      auto m = load_valid(file_a);
      auto v = verify_realization(m, load_mov(file_b));
      std::cout << "verified=" << (v.ok ? "true" : "false");
      if (v.failed_step >= 0) std::cout << " failed_step=" << v.failed_step + 1;
      std::cout << "\n";
      if (!v.ok) std::cerr << v.detail << "\n";
      return v.ok ? kOk : kValidation;
    }
    if (*iso_cmd) {
      bool same = is_isomorphic(load_valid(file_a), load_valid(file_b));
      std::cout << "isomorphic=" << (same ? "true" : "false") << "\n";
      return same ? kOk : kValidation;
    }
    if (*enum_cmd) {
      int guard = enumeration_guard();
      if (kmax > guard) {
        throw Failure{kUsage, "--kmax " + std::to_string(kmax) + " exceeds the complexity guard " +
                                  std::to_string(guard) + " (set FOLCALC_KMAX_OVERRIDE to raise it)"};
      }
      auto movies = enumerate_movies(kmax, guard);
      std::map<int, std::vector<FoliationMovie>> by_k;
      for (auto& m : movies) by_k[m.k()].push_back(std::move(m));
      std::filesystem::create_directories(out_path);
      std::string summary;
      std::size_t total = 0;
      for (const auto& [kk, list] : by_k) {
        std::string text = census_text(kk, list);
        write_file((std::filesystem::path(out_path) / ("census-k" + std::to_string(kk) + ".fol")).string(), text);
        summary += text.substr(2, text.find('\n') - 2) + "\n";
        total += list.size();
      }
      summary += "total movies=" + std::to_string(total) + "\n";
      write_file((std::filesystem::path(out_path) / "summary.txt").string(), summary);
      std::cout << summary;
      return kOk;
    }
    if (*random_cmd) {
      FoliationMovie m;
      try {
        m = random_movie(k, h_extra, seed);
      } catch (const std::invalid_argument& e) {
        throw Failure{kUsage, e.what()};
      }
      emit(serialize_fol(m), out_path);
      return kOk;
    }
    if (*page_cmd) {
      Page p(genus, boundary);
      std::cout << "chi=" << euler_char(p) << " norm=" << norm(p) << "\n";
      return kOk;
    }
    if (*sum_cmd) {
      Page a(genus, boundary), b(genus2, boundary2);
      Page s = boundary_connect_sum(a, b);
      std::cout << "genus=" << s.genus << " boundary=" << s.boundary_count << " chi=" << euler_char(s)
                << " norm=" << norm(s) << "\n";
      return kOk;
    }
    if (*ledger_cmd) {
      auto ledger = surgery_ledger(chi);
      std::cout << (format == "kv" ? ledger_kv(ledger) : ledger_text(ledger));
      return ledger.all_hold() ? kOk : kValidation;
    }
    if (*add_cmd) {
      auto r = tight_additivity(sn1, sn2, tight_flag);
      std::cout << "value=" << r.value << " semantics=" << (r.semantics == Semantics::Equality ? "equality" : "upper-bound")
                << " tight=" << (r.tight_flag ? "true" : "false") << "\n";
      return kOk;
    }
    if (*hg_cmd) {
      std::cout << "hg=" << heegaard_genus_from_norm(sn1) << "\n";
      return kOk;
    }
  } catch (const Failure& f) {
    std::cerr << f.message << "\n";
    return f.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}
