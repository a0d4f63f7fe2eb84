#pragma once

#include "mhd/graphs.hpp"
#include "mhd/rules.hpp"
#include "mhd/search.hpp"

namespace mhd {

/// A domain plus optional per-component element labels used by the file
/// formats. Components without labels read and write 0-based numbers.
struct LabeledDomain {
    Domain domain;
    std::vector<std::vector<std::string>> labels;  // empty vector = unlabeled component

    std::string label_of(int s, int e) const;
    int element_of(int s, const std::string& token) const;
    std::string alt_label(int alt) const;  // comma-joined coordinates
};

/// Format: `space 3x2` header, optional `labels <s>: a,b,c` lines (1-based s),
/// then one preference per line as `;`-separated alternatives, best first,
/// each alternative a comma-separated coordinate tuple. Blank lines and lines
/// starting with `#` are skipped.
LabeledDomain parse_domain(const std::string& text);
std::string serialize_domain(const LabeledDomain& ld);

/// `a1,a2:b1,b2` (lower tuple, colon, upper tuple) in the domain's labels.
Thresholds parse_thresholds(const std::string& text, const LabeledDomain& ld);
std::string serialize_thresholds(const Thresholds& t, const LabeledDomain& ld);

/// Rule file: header `scf n=<n> domain=<name>`, then one line per profile
/// `i1 i2 ... in -> alt` with 1-based preference indices, all |D|^n profiles
/// in ascending profile order.
std::string serialize_scf(const Scf& f, const LabeledDomain& ld, const std::string& domain_name);
std::pair<Scf, std::string> parse_scf(const std::string& text, const LabeledDomain& ld);

/// Ballot file: header `fbr s=<s> n=<n>` (1-based component), then one
/// `J=<bitmask> b=<element>` line per coalition, 0-based elements.
std::string serialize_fbr(const Fbr& f);
Fbr parse_fbr(const std::string& text);

/// One `u v label` line per edge; `offset` shifts vertex ids for display.
std::string graph_edge_list(const Graph& g, int offset = 0);

std::string emit_report(const VerificationReport& rep, bool json = false);

int exit_code_for(Status s);

}  // namespace mhd
