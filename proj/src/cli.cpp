#include "qport/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qport/connector.hpp"
#include "qport/formats.hpp"
#include "qport/oracle.hpp"
#include "qport/reducer.hpp"

namespace qport {

namespace {

namespace fs = std::filesystem;

// Problems with the user's input; reported with exit status 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw InputError("cannot write '" + path.string() + "'");
}

MarkedCover load_cover(const std::string& path) {
  try {
    return parse_portrait(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Portrait load_portrait(const std::string& path) {
  const MarkedCover cover = load_cover(path);
  try {
    return derive_portrait(cover);
  } catch (const InvalidCoverError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string numbered(std::string_view prefix, std::size_t i, std::string_view ext) {
  std::ostringstream os;
  os << prefix << std::setw(4) << std::setfill('0') << i << ext;
  return os.str();
}

void print_trace(std::ostream& out, const ReductionTrace& trace) {
  for (const auto& e : trace.entries) {
    out << to_string(e.step) << ' ';
    if (e.move) {
      if (e.move->minted) out << "mint " << e.move->minted->point << " -> " << e.move->minted->image << ", ";
      out << "swap " << e.move->swap.first << ' ' << e.move->swap.second << ' ' << to_string(e.move->tag);
    } else {
      out << "verify";
    }
    out << "  " << to_string(e.after) << '\n';
  }
}

void print_bounds(std::ostream& out, const BoundReport& b) {
  out << "runs: step1=" << b.step1_runs << " step2=" << b.step2_runs << " step3=" << b.step3_runs
      << " (expected " << b.step3_expected << ") " << (b.pass ? "pass" : "fail") << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic portrait toolkit: validate, classify, reduce and connect marked covers", "qport"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "dot"}));

  std::string file1, file2, trace_out, dot_dir, cert_out, out_dir;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  auto* validate = app.add_subcommand("validate", "Check the quadratic portrait rules");
  validate->add_option("FILE", file1)->required();

  auto* features = app.add_subcommand("features", "Print the portrait features");
  features->add_option("FILE", file1)->required();

  auto* iso = app.add_subcommand("iso", "Decide portrait isomorphism by features");
  iso->add_option("FILE1", file1)->required();
  iso->add_option("FILE2", file2)->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce to two fixed critical points");
  reduce_cmd->add_option("FILE", file1)->required();
  reduce_cmd->add_option("--trace", trace_out, "Write the trace file");
  reduce_cmd->add_option("--dot-dir", dot_dir, "Write one DOT file per portrait");

  auto* connect_cmd = app.add_subcommand("connect", "Build a transposition path from FILE1 to FILE2");
  connect_cmd->add_option("FILE1", file1)->required();
  connect_cmd->add_option("FILE2", file2)->required();
  connect_cmd->add_option("--cert", cert_out, "Write the certificate file");

  auto* verify = app.add_subcommand("verify", "Replay a trace or certificate file");
  verify->add_option("FILE", file1)->required();

  auto* enumerate = app.add_subcommand("enumerate", "List portraits up to isomorphism");
  enumerate->add_option("N", count, "Maximum vertex count")->required()->check(CLI::Range(2, 10));
  enumerate->add_option("--out", out_dir, "Write one file per class");
  enumerate->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));

  auto* random = app.add_subcommand("random", "Sample a valid cover");
  random->add_option("N", count, "Maximum point count")->required()->check(CLI::Range(2, 64));
  random->add_option("--seed", seed, "Seed")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_input_error;
  }
  const bool dot = format == "dot";

  try {
    if (*validate) {
      const auto report = validate_cover(load_cover(file1));
      out << report << '\n';
      return report.pass() ? exit_ok : exit_false;
    }

    if (*features) {
      const Portrait p = load_portrait(file1);
      if (dot) {
        out << export_dot(p);
      } else {
        out << to_string(classify(p)) << '\n';
      }
      return exit_ok;
    }

    if (*iso) {
      const bool same = features_isomorphic(load_portrait(file1), load_portrait(file2));
      out << (same ? "isomorphic" : "not isomorphic") << '\n';
      return same ? exit_ok : exit_false;
    }

    if (*reduce_cmd) {
      const MarkedCover cover = load_cover(file1);
      if (auto report = validate_cover(cover); !report.pass()) {
        throw InputError(file1 + ": invalid quadratic cover: " + [&] {
          std::ostringstream os;
          os << report;
          return os.str();
        }());
      }
      const ReductionTrace trace = reduce(cover);
      const BoundReport bounds = verify_step_bounds(trace);
      if (dot) {
        out << export_dot(derive_portrait(trace.final_cover));
      } else {
        print_trace(out, trace);
        print_bounds(out, bounds);
      }
      if (!trace_out.empty()) write_file(trace_out, write_trace(trace));
      if (!dot_dir.empty()) {
        fs::create_directories(dot_dir);
        MarkedCover current = trace.initial;
        write_file(fs::path(dot_dir) / numbered("portrait_", 0, ".dot"), export_dot(derive_portrait(current)));
        for (std::size_t i = 0; i < trace.entries.size(); ++i) {
          if (trace.entries[i].move) current = apply_move(current, *trace.entries[i].move);
          write_file(fs::path(dot_dir) / numbered("portrait_", i + 1, ".dot"), export_dot(derive_portrait(current)));
        }
      }
      return bounds.pass ? exit_ok : exit_false;
    }

    if (*connect_cmd) {
      const MarkedCover g = load_cover(file1);
      const MarkedCover h = load_cover(file2);
      for (const auto* c : {&g, &h}) {
        if (!validate_cover(*c).pass()) throw InputError((c == &g ? file1 : file2) + ": invalid quadratic cover");
      }
      const PathCertificate cert = connect(g, h);
      if (dot) {
        out << export_dot(derive_portrait(replay_certificate(g, cert)));
      } else {
        out << "moves: " << cert.word.size() << " (" << cert.junction << " from the source reduction)\n";
        out << "reached: " << to_string(cert.final_features) << '\n';
        out << "verified: " << (cert.verified ? "true" : "false") << '\n';
      }
      if (!cert_out.empty()) write_file(cert_out, write_certificate(g, h, cert));
      return cert.verified ? exit_ok : exit_false;
    }

    if (*verify) {
      const std::string text = read_file(file1);
      std::string kind;
      try {
        kind = file_kind(text);
      } catch (const ParseError& e) {
        throw InputError(file1 + ": " + e.what());
      }
      if (kind == "trace") {
        ReductionTrace trace = [&] {
          try {
            return read_trace(text);
          } catch (const ParseError& e) {
            throw InputError(file1 + ": " + e.what());
          }
        }();
        const BoundReport bounds = verify_step_bounds(trace);
        const bool reduced = classify(derive_portrait(trace.final_cover)) == FeatureVector{TwoComponents{}};
        print_bounds(out, bounds);
        out << "final: " << to_string(classify(derive_portrait(trace.final_cover))) << '\n';
        const bool ok = bounds.pass && reduced;
        out << (ok ? "true" : "false") << '\n';
        return ok ? exit_ok : exit_false;
      }
      CertificateFile file = [&] {
        try {
          return read_certificate(text);
        } catch (const ParseError& e) {
          throw InputError(file1 + ": " + e.what());
        }
      }();
      bool ok = verify_certificate(file.source, file.target, file.certificate);
      if (ok) {
        try {
          ok = replay_certificate(file.source, file.certificate) == file.final_cover;
        } catch (const std::exception&) {
          ok = false;
        }
      }
      out << (ok ? "true" : "false") << '\n';
      return ok ? exit_ok : exit_false;
    }

    if (*enumerate) {
      const auto classes = enumerate_portraits(count, threads);
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (std::size_t i = 0; i < classes.size(); ++i) {
          if (dot) {
            write_file(fs::path(out_dir) / numbered("class_", i, ".dot"), export_dot(derive_portrait(classes[i])));
          } else {
            write_file(fs::path(out_dir) / numbered("class_", i, ".por"), serialize_portrait(classes[i]));
          }
        }
        out << classes.size() << " classes\n";
      } else {
        for (std::size_t i = 0; i < classes.size(); ++i) {
          out << "# class " << i << ": " << to_string(classify(derive_portrait(classes[i]))) << '\n';
          out << (dot ? export_dot(derive_portrait(classes[i])) : serialize_portrait(classes[i]));
        }
      }
      return exit_ok;
    }

    if (*random) {
      const MarkedCover cover = random_cover(count, seed);
      out << (dot ? export_dot(derive_portrait(cover)) : serialize_portrait(cover));
      return exit_ok;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  return exit_input_error;
}

}  // namespace qport
