#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qport/connector.hpp"
#include "qport/cover.hpp"
#include "qport/reducer.hpp"

namespace qport {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Portrait text file:
//   # comment
//   critical <id> <id>
//   map <id> <id>
// Every point has exactly one map line. Reserved names d<n> are rejected
// unless `allow_reserved` is set (trace and certificate blocks set it).

MarkedCover parse_portrait(std::string_view text, bool allow_reserved = false);

/// "critical" line first, then map lines sorted by point name.
std::string serialize_portrait(const MarkedCover& cover);

/// Graphviz digraph; critical vertices are double circles and their edges
/// carry the label 2.
std::string export_dot(const Portrait& portrait);

// Trace and certificate files start with "qpv1 trace" or "qpv1 certificate".
// Covers sit in "begin <name>" ... "end" blocks. Runs are recorded as
//   mint <id> -> <id>
//   swap <id> <id> <tag>[-inv]
//   verify <step>
// where each swap line is tagged with the step it ran under via its tag.
// Certificates add "identify <h-id> <g-id>" and "extend <id> -> <id>" lines at
// the junction.

inline constexpr std::string_view kFormatVersion = "qpv1";

std::string write_trace(const ReductionTrace& trace);
/// Rebuilds the trace by replay and checks the final block against it.
ReductionTrace read_trace(std::string_view text);

struct CertificateFile {
  MarkedCover source;
  MarkedCover target;
  PathCertificate certificate;
  MarkedCover final_cover;  ///< as recorded; not checked against a replay
};

std::string write_certificate(const MarkedCover& g, const MarkedCover& h, const PathCertificate& cert);
CertificateFile read_certificate(std::string_view text);

/// "trace" or "certificate", from the header line. Throws ParseError.
std::string file_kind(std::string_view text);

}  // namespace qport
