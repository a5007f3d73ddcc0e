#include "qport/formats.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace qport {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(std::move(tok));
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

PointId checked_id(const Line& line, const std::string& token, bool allow_reserved) {
  if (!is_valid_token(token)) throw ParseError(line.number, "invalid point name '" + token + "'");
  if (!allow_reserved && is_reserved_name(token)) {
    throw ParseError(line.number, "point name '" + token + "' is reserved for minted points");
  }
  return PointId(token);
}

MarkedCover parse_cover_lines(const std::vector<Line>& lines, std::size_t end_line, bool allow_reserved) {
  std::optional<std::pair<PointId, PointId>> critical;
  std::size_t critical_line = 0;
  std::map<PointId, std::pair<PointId, std::size_t>> map;

  for (const Line& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "critical") {
      if (t.size() != 3) throw ParseError(line.number, "expected 'critical <id> <id>'");
      if (critical) throw ParseError(line.number, "duplicate critical line");
      critical.emplace(checked_id(line, t[1], allow_reserved), checked_id(line, t[2], allow_reserved));
      if (critical->first == critical->second) throw ParseError(line.number, "critical points must differ");
      critical_line = line.number;
    } else if (t[0] == "map") {
      if (t.size() != 3) throw ParseError(line.number, "expected 'map <id> <id>'");
      PointId p = checked_id(line, t[1], allow_reserved);
      PointId q = checked_id(line, t[2], allow_reserved);
      if (!map.emplace(p, std::pair{q, line.number}).second) {
        throw ParseError(line.number, "duplicate map line for '" + p.str() + "'");
      }
    } else {
      throw ParseError(line.number, "unknown directive '" + t[0] + "'");
    }
  }

  if (!critical) throw ParseError(end_line, "missing critical line");
  for (const auto& [p, image] : map) {
    if (!map.contains(image.first)) {
      throw ParseError(image.second, "point '" + image.first.str() + "' has no map line");
    }
  }
  for (const PointId* c : {&critical->first, &critical->second}) {
    if (!map.contains(*c)) throw ParseError(critical_line, "unknown critical point '" + c->str() + "'");
  }

  std::vector<std::pair<PointId, PointId>> pairs;
  pairs.reserve(map.size());
  for (auto& [p, image] : map) pairs.emplace_back(p, image.first);
  return MarkedCover(std::move(pairs), critical->first, critical->second);
}

Step step_of(FunctionTag tag) {
  switch (tag) {
    case FunctionTag::make_periodic: return Step::pre_periods;
    case FunctionTag::decrease_cycle: return Step::cycle_lengths;
    default: return Step::components;
  }
}

void write_block(std::ostream& os, std::string_view name, const MarkedCover& cover) {
  os << "begin " << name << '\n' << serialize_portrait(cover) << "end\n";
}

void write_move(std::ostream& os, const Move& m) {
  if (m.minted) os << "mint " << m.minted->point << " -> " << m.minted->image << '\n';
  os << "swap " << m.swap.first << ' ' << m.swap.second << ' ' << to_string(m.tag)
     << (m.inverse ? "-inv" : "") << '\n';
}

void write_features(std::ostream& os, const FeatureVector& fv) {
  os << "features " << pattern_name(pattern_of(fv));
  for (auto v : lengths_of(fv)) os << ' ' << v;
  os << '\n';
}

// Sequential reader over tokenized lines of a trace or certificate.
class Reader {
public:
  explicit Reader(std::string_view text) : lines_(tokenize(text)) {}

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const {
    if (done()) throw ParseError(last_number(), "unexpected end of file");
    return lines_[pos_];
  }
  const Line& take() {
    const Line& l = peek();
    ++pos_;
    return l;
  }
  std::size_t last_number() const { return lines_.empty() ? 0 : lines_.back().number; }

  void header(std::string_view kind) {
    const Line& l = take();
    if (l.tokens.size() != 2 || l.tokens[0] != kFormatVersion) {
      throw ParseError(l.number, "expected header '" + std::string(kFormatVersion) + " " + std::string(kind) + "'");
    }
    if (l.tokens[1] != kind) throw ParseError(l.number, "expected a " + std::string(kind) + " file");
  }

  MarkedCover block(std::string_view name) {
    const Line& open = take();
    if (open.tokens.size() != 2 || open.tokens[0] != "begin" || open.tokens[1] != name) {
      throw ParseError(open.number, "expected 'begin " + std::string(name) + "'");
    }
    std::vector<Line> body;
    for (;;) {
      const Line& l = take();
      if (l.tokens.size() == 1 && l.tokens[0] == "end") {
        try {
          return parse_cover_lines(body, l.number, true);
        } catch (const CoverError& e) {
          throw ParseError(open.number, e.what());
        }
      }
      body.push_back(l);
    }
  }

  // Reads a "mint" line (optional) and the "swap" line following it.
  std::optional<Move> move() {
    if (done()) return std::nullopt;
    std::optional<Mint> minted;
    if (peek().tokens[0] == "mint") {
      const Line& l = take();
      if (l.tokens.size() != 4 || l.tokens[2] != "->") throw ParseError(l.number, "expected 'mint <id> -> <id>'");
      minted = Mint{checked_id(l, l.tokens[1], true), checked_id(l, l.tokens[3], true)};
      if (done() || peek().tokens[0] != "swap") throw ParseError(l.number, "mint line not followed by a swap");
    }
    if (peek().tokens[0] != "swap") return std::nullopt;
    const Line& l = take();
    if (l.tokens.size() != 4) throw ParseError(l.number, "expected 'swap <id> <id> <tag>'");
    std::string_view tag = l.tokens[3];
    const bool inverse = tag.ends_with("-inv");
    if (inverse) tag.remove_suffix(4);
    Move m{{checked_id(l, l.tokens[1], true), checked_id(l, l.tokens[2], true)}, std::move(minted), {}, inverse};
    try {
      m.tag = parse_function_tag(tag);
    } catch (const std::invalid_argument& e) {
      throw ParseError(l.number, e.what());
    }
    return m;
  }

  std::optional<std::pair<std::string, std::vector<std::string>>> keyword(std::string_view word) {
    if (done() || peek().tokens[0] != word) return std::nullopt;
    const Line& l = take();
    return std::pair{l.tokens[0], std::vector<std::string>(l.tokens.begin() + 1, l.tokens.end())};
  }

private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

MarkedCover parse_portrait(std::string_view text, bool allow_reserved) {
  const auto lines = tokenize(text);
  const std::size_t end_line = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
  try {
    return parse_cover_lines(lines, end_line, allow_reserved);
  } catch (const CoverError& e) {
    throw ParseError(end_line, e.what());
  }
}

std::string serialize_portrait(const MarkedCover& cover) {
  std::ostringstream os;
  os << "critical " << cover.critical_point(CriticalSlot::first) << ' '
     << cover.critical_point(CriticalSlot::second) << '\n';
  for (Index i = 0; i < cover.size(); ++i) os << "map " << cover.name(i) << ' ' << cover.name(cover.image(i)) << '\n';
  return os.str();
}

std::string export_dot(const Portrait& portrait) {
  std::ostringstream os;
  os << "digraph portrait {\n";
  for (Index v = 0; v < portrait.size(); ++v) {
    os << "  \"" << portrait.name(v) << "\" [shape=" << (portrait.is_critical(v) ? "doublecircle" : "circle")
       << "];\n";
  }
  for (Index v = 0; v < portrait.size(); ++v) {
    os << "  \"" << portrait.name(v) << "\" -> \"" << portrait.name(portrait.next(v)) << '"';
    if (portrait.label(v) == 2) os << " [label=\"2\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string write_trace(const ReductionTrace& trace) {
  std::ostringstream os;
  os << kFormatVersion << " trace\n";
  write_block(os, "initial", trace.initial);
  for (const auto& e : trace.entries) {
    if (e.move) {
      write_move(os, *e.move);
    } else {
      os << "verify " << to_string(e.step) << '\n';
    }
    os << "# " << to_string(e.after) << '\n';
  }
  write_block(os, "final", trace.final_cover);
  return os.str();
}

ReductionTrace read_trace(std::string_view text) {
  Reader in(text);
  in.header("trace");
  const MarkedCover initial = in.block("initial");

  std::vector<std::pair<Step, std::optional<Move>>> runs;
  for (;;) {
    if (auto m = in.move()) {
      const Step step = step_of(m->tag);
      runs.emplace_back(step, std::move(*m));
    } else if (auto v = in.keyword("verify")) {
      if (v->second.size() != 1) throw ParseError(in.last_number(), "expected 'verify <step>'");
      try {
        runs.emplace_back(parse_step(v->second[0]), std::nullopt);
      } catch (const std::invalid_argument& e) {
        throw ParseError(in.last_number(), e.what());
      }
    } else {
      break;
    }
  }
  const std::size_t final_line = in.peek().number;
  const MarkedCover final_cover = in.block("final");
  if (!in.done()) throw ParseError(in.peek().number, "trailing content after final block");

  ReductionTrace trace = [&] {
    try {
      return rebuild_trace(initial, runs);
    } catch (const std::exception& e) {
      throw ParseError(final_line, std::string("replay failed: ") + e.what());
    }
  }();
  if (!(trace.final_cover == final_cover)) throw ParseError(final_line, "replay does not reproduce the final block");
  return trace;
}

std::string write_certificate(const MarkedCover& g, const MarkedCover& h, const PathCertificate& cert) {
  std::ostringstream os;
  os << kFormatVersion << " certificate\n";
  write_block(os, "source", g);
  write_block(os, "target", h);
  for (std::size_t i = 0; i < cert.junction; ++i) write_move(os, cert.word[i]);
  for (const auto& [from, to] : cert.identification.pairs) os << "identify " << from << ' ' << to << '\n';
  for (const auto& e : cert.identification.extension) os << "extend " << e.point << " -> " << e.image << '\n';
  for (std::size_t i = cert.junction; i < cert.word.size(); ++i) write_move(os, cert.word[i]);
  write_block(os, "final", replay_certificate(g, cert));
  write_features(os, cert.final_features);
  os << "verified " << (cert.verified ? "true" : "false") << '\n';
  return os.str();
}

CertificateFile read_certificate(std::string_view text) {
  Reader in(text);
  in.header("certificate");
  MarkedCover source = in.block("source");
  MarkedCover target = in.block("target");

  PathCertificate cert;
  while (auto m = in.move()) cert.word.push_back(std::move(*m));
  cert.junction = cert.word.size();
  while (auto id = in.keyword("identify")) {
    if (id->second.size() != 2) throw ParseError(in.last_number(), "expected 'identify <id> <id>'");
    cert.identification.pairs.emplace_back(PointId(id->second[0]), PointId(id->second[1]));
  }
  while (auto ext = in.keyword("extend")) {
    if (ext->second.size() != 3 || ext->second[1] != "->") {
      throw ParseError(in.last_number(), "expected 'extend <id> -> <id>'");
    }
    cert.identification.extension.push_back({PointId(ext->second[0]), PointId(ext->second[2])});
  }
  while (auto m = in.move()) cert.word.push_back(std::move(*m));

  MarkedCover final_cover = in.block("final");

  auto features = in.keyword("features");
  if (!features || features->second.empty()) throw ParseError(in.last_number(), "expected 'features' line");
  std::vector<std::uint32_t> lengths;
  try {
    for (std::size_t i = 1; i < features->second.size(); ++i) {
      lengths.push_back(static_cast<std::uint32_t>(std::stoul(features->second[i])));
    }
    cert.final_features = make_features(features->second[0], lengths);
  } catch (const std::exception& e) {
    throw ParseError(in.last_number(), e.what());
  }

  auto verified = in.keyword("verified");
  if (!verified || verified->second.size() != 1 ||
      (verified->second[0] != "true" && verified->second[0] != "false")) {
    throw ParseError(in.last_number(), "expected 'verified true|false'");
  }
  cert.verified = verified->second[0] == "true";
  if (!in.done()) throw ParseError(in.peek().number, "trailing content after certificate");

  return CertificateFile{std::move(source), std::move(target), std::move(cert), final_cover};
}

std::string file_kind(std::string_view text) {
  for (const Line& l : tokenize(text)) {
    if (l.tokens.size() == 2 && l.tokens[0] == kFormatVersion &&
        (l.tokens[1] == "trace" || l.tokens[1] == "certificate")) {
      return l.tokens[1];
    }
    throw ParseError(l.number, "not a trace or certificate file");
  }
  throw ParseError(0, "empty file");
}

}  // namespace qport
