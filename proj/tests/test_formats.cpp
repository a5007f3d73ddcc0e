#include <doctest.h>

#include <random>

#include "qport/formats.hpp"
#include "qport/oracle.hpp"
#include "support.hpp"

using namespace qport;
using qport::test::cover_of;

namespace {

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

std::size_t error_line(const std::string& text) {
  try {
    parse_portrait(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_SUITE("formats") {

TEST_CASE("parse the z2 file") {
  CHECK(parse_portrait("critical A B\nmap A A\nmap B B") == cover_of("A*>A B*>B"));
  CHECK(parse_portrait("# z2\n\ncritical A B  # pair\nmap B B\nmap A A\n") == cover_of("A*>A B*>B"));
}

TEST_CASE("parse errors carry the line") {
  CHECK(error_line("critical A B\nmap A A\nmap A B\nmap B B\n") == 3);
  CHECK(error_line("critical A B\ncritical A B\nmap A A\nmap B B\n") == 2);
  CHECK(error_line("critical A A\nmap A A\n") == 1);
  CHECK(error_line("critical A B\nmap A A\nmap B B\nfoo\n") == 4);
  CHECK(error_line("map A A\nmap B B\n") == 3);
  CHECK(error_line("critical A B\nmap A Z\nmap B B\n") == 2);
  CHECK(error_line("critical A C\nmap A A\nmap B B\n") == 1);
  CHECK(error_line("critical A B\nmap A A\nmap B B\nmap d3 A\n") == 4);
  CHECK(error_line("critical A B\nmap A A\nmap B B x\n") == 3);
  CHECK(error_line("critical A B\nmap A A\nmap B B-\n") == 3);
  CHECK_NOTHROW(parse_portrait("critical A B\nmap A A\nmap B B\nmap d3 A\n", true));
}

TEST_CASE("serialize normalizes") {
  const std::string messy = "map Q A\n# c\ncritical A B\nmap A P\nmap P Q\nmap B B\n";
  const std::string normal = "critical A B\nmap A P\nmap B B\nmap P Q\nmap Q A\n";
  CHECK(serialize_portrait(parse_portrait(messy)) == normal);
  CHECK(serialize_portrait(parse_portrait(normal)) == normal);
}

TEST_CASE("serialize round trips random covers") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const MarkedCover c = random_cover(8, s);
    CHECK(parse_portrait(serialize_portrait(c)) == c);
  }
}

TEST_CASE("dot export") {
  const std::string z2 = export_dot(derive_portrait(cover_of("A*>A B*>B")));
  CHECK(count_of(z2, "doublecircle") == 2);
  CHECK(z2.find("\"A\" -> \"A\" [label=\"2\"]") != std::string::npos);
  CHECK(z2.find("\"B\" -> \"B\" [label=\"2\"]") != std::string::npos);

  const std::string rabbit = export_dot(derive_portrait(cover_of("A*>P P>Q Q>A B*>B")));
  CHECK(count_of(rabbit, " -> ") == 4);
  for (const char* e : {"\"A\" -> \"P\"", "\"P\" -> \"Q\"", "\"Q\" -> \"A\"", "\"B\" -> \"B\""}) {
    CHECK(rabbit.find(e) != std::string::npos);
  }

  const std::string inter = export_dot(derive_portrait(cover_of("A*>P P>M B*>Q Q>M M>T T>T")));
  CHECK(count_of(inter, "-> \"M\"") == 2);
}

TEST_CASE("trace round trip") {
  const ReductionTrace t = reduce(cover_of("A*>P P>M B*>Q Q>M M>T T>T"));
  const std::string text = write_trace(t);
  CHECK(text.rfind("qpv1 trace\n", 0) == 0);
  CHECK(file_kind(text) == "trace");
  const ReductionTrace back = read_trace(text);
  CHECK(back.initial == t.initial);
  CHECK(back.final_cover == t.final_cover);
  CHECK(back.step_runs == t.step_runs);
  CHECK(write_trace(back) == text);
}

TEST_CASE("trace with a wrong final block is rejected") {
  const ReductionTrace t = reduce(cover_of("A*>P P>A B*>B"));
  std::string text = write_trace(t);
  const auto pos = text.rfind("map P P");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 7, "map P A");
  CHECK_THROWS_AS(read_trace(text), ParseError);
}

TEST_CASE("bad headers") {
  CHECK_THROWS_AS(file_kind("qpv2 trace\n"), ParseError);
  CHECK_THROWS_AS(file_kind(""), ParseError);
  CHECK_THROWS_AS(read_trace("qpv1 certificate\n"), ParseError);
  CHECK_THROWS_AS(read_trace("qpv1 trace\nbegin initial\ncritical A B\nmap A A\nmap B B\nend\nswap A B F9\n"),
                  ParseError);
}

TEST_CASE("certificate round trip") {
  const MarkedCover g = cover_of("A*>P P>Q Q>A B*>B");
  const MarkedCover h = cover_of("x*>y y>x z*>z W>W");
  const PathCertificate cert = connect(g, h);
  const std::string text = write_certificate(g, h, cert);
  CHECK(file_kind(text) == "certificate");
  const CertificateFile f = read_certificate(text);
  CHECK(f.source == g);
  CHECK(f.target == h);
  CHECK(f.certificate.word == cert.word);
  CHECK(f.certificate.junction == cert.junction);
  CHECK(f.certificate.identification == cert.identification);
  CHECK(f.certificate.final_features == cert.final_features);
  CHECK(f.certificate.verified == cert.verified);
  CHECK(f.final_cover == replay_certificate(g, cert));
  CHECK(write_certificate(f.source, f.target, f.certificate) == text);
  CHECK(verify_certificate(f.source, f.target, f.certificate));
}

}  // TEST_SUITE
