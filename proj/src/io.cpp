#include "mhd/io.hpp"

#include <sstream>

#include <json.hpp>

namespace mhd {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw InputError("line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& s, int line, const std::string& what) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(line, "expected a number for " + what + ", got '" + s + "'");
    }
}

}  // namespace

std::string LabeledDomain::label_of(int s, int e) const {
    domain.space.check_element(s, e);
    if (s < static_cast<int>(labels.size()) && !labels[s].empty()) return labels[s][e];
    return std::to_string(e);
}

int LabeledDomain::element_of(int s, const std::string& token) const {
    if (s < static_cast<int>(labels.size()) && !labels[s].empty()) {
        for (int e = 0; e < domain.space.size(s); ++e)
            if (labels[s][e] == token) return e;
        throw InputError("unknown element label '" + token + "'");
    }
    int e = 0;
    try {
        e = std::stoi(token);
    } catch (const std::exception&) {
        throw InputError("unknown element '" + token + "'");
    }
    domain.space.check_element(s, e);
    return e;
}

std::string LabeledDomain::alt_label(int alt) const {
    Alt coords = domain.space.decode(alt);
    std::string out;
    for (int s = 0; s < domain.space.components(); ++s) {
        if (s) out += ",";
        out += label_of(s, coords[s]);
    }
    return out;
}

LabeledDomain parse_domain(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::optional<ProductSpace> space;
    std::vector<std::vector<std::string>> labels;
    std::vector<std::pair<int, std::string>> body;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!space) {
            if (line.rfind("space ", 0) != 0) fail(lineno, "expected 'space <k1>x<k2>...' header");
            std::vector<int> sizes;
            for (const auto& tok : split(line.substr(6), 'x'))
                sizes.push_back(parse_int(tok, lineno, "component size"));
            try {
                space.emplace(sizes);
            } catch (const InputError& e) {
                fail(lineno, e.what());
            }
            labels.resize(space->components());
            continue;
        }
        if (line.rfind("labels ", 0) == 0) {
            auto colon = line.find(':');
            if (colon == std::string::npos) fail(lineno, "expected 'labels <s>: a,b,c'");
            int s = parse_int(trim(line.substr(7, colon - 7)), lineno, "component index") - 1;
            if (s < 0 || s >= space->components()) fail(lineno, "component index out of range");
            auto toks = split(line.substr(colon + 1), ',');
            if (static_cast<int>(toks.size()) != space->size(s))
                fail(lineno, "label count does not match component size");
            labels[s] = toks;
            continue;
        }
        body.emplace_back(lineno, line);
    }
    if (!space) throw InputError("missing 'space' header");
    LabeledDomain ld{Domain(*space, {}), labels};
    std::vector<Preference> prefs;
    for (const auto& [ln, line] : body) {
        auto alts = split(line, ';');
        if (static_cast<int>(alts.size()) != space->alt_count())
            fail(ln, "expected " + std::to_string(space->alt_count()) + " alternatives, got " +
                         std::to_string(alts.size()));
        std::vector<int> ranking;
        for (const auto& alt_tok : alts) {
            auto coords = split(alt_tok, ',');
            if (static_cast<int>(coords.size()) != space->components())
                fail(ln, "alternative '" + alt_tok + "' has the wrong arity");
            Alt a(space->components());
            for (int s = 0; s < space->components(); ++s) {
                try {
                    a[s] = ld.element_of(s, coords[s]);
                } catch (const InputError& e) {
                    fail(ln, e.what());
                }
            }
            ranking.push_back(space->encode(a));
        }
        try {
            prefs.push_back(Preference::from_ranking(*space, std::move(ranking)));
        } catch (const InputError& e) {
            fail(ln, e.what());
        }
        for (size_t i = 0; i + 1 < prefs.size(); ++i)
            if (prefs[i] == prefs.back()) fail(ln, "duplicate preference");
    }
    ld.domain = Domain(*space, std::move(prefs));
    return ld;
}

std::string serialize_domain(const LabeledDomain& ld) {
    const auto& space = ld.domain.space;
    std::string out = "space ";
    for (int s = 0; s < space.components(); ++s) {
        if (s) out += "x";
        out += std::to_string(space.size(s));
    }
    out += "\n";
    for (int s = 0; s < static_cast<int>(ld.labels.size()); ++s) {
        if (ld.labels[s].empty()) continue;
        out += "labels " + std::to_string(s + 1) + ": ";
        for (int e = 0; e < space.size(s); ++e) {
            if (e) out += ",";
            out += ld.labels[s][e];
        }
        out += "\n";
    }
    for (const auto& p : ld.domain.prefs) {
        for (size_t k = 0; k < p.ranking.size(); ++k) {
            if (k) out += ";";
            out += ld.alt_label(p.ranking[k]);
        }
        out += "\n";
    }
    return out;
}

Thresholds parse_thresholds(const std::string& text, const LabeledDomain& ld) {
    auto halves = split(text, ':');
    if (halves.size() != 2) throw InputError("thresholds must be '<lower tuple>:<upper tuple>'");
    const auto& space = ld.domain.space;
    Thresholds t;
    for (int half = 0; half < 2; ++half) {
        auto coords = split(halves[half], ',');
        if (static_cast<int>(coords.size()) != space.components())
            throw InputError("threshold tuple has the wrong arity");
        Alt a(space.components());
        for (int s = 0; s < space.components(); ++s) a[s] = ld.element_of(s, coords[s]);
        (half == 0 ? t.lower : t.upper) = a;
    }
    if (!validate_thresholds(space, t)) throw InputError("invalid thresholds");
    return t;
}

std::string serialize_thresholds(const Thresholds& t, const LabeledDomain& ld) {
    return ld.alt_label(ld.domain.space.encode(t.lower)) + ":" +
           ld.alt_label(ld.domain.space.encode(t.upper));
}

std::string serialize_scf(const Scf& f, const LabeledDomain& ld, const std::string& domain_name) {
    std::string out = "scf n=" + std::to_string(f.n) + " domain=" + domain_name + "\n";
    for (int idx = 0; idx < f.profile_count(); ++idx) {
        auto prof = decode_profile(idx, f.domain_size, f.n);
        for (int i = 0; i < f.n; ++i) {
            if (i) out += " ";
            out += std::to_string(prof[i] + 1);
        }
        out += " -> " + ld.alt_label(f.table[idx]) + "\n";
    }
    return out;
}

std::pair<Scf, std::string> parse_scf(const std::string& text, const LabeledDomain& ld) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    Scf f;
    std::string domain_name;
    bool seen_header = false;
    const auto& space = ld.domain.space;
    std::vector<int> table;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            if (line.rfind("scf ", 0) != 0) fail(lineno, "expected 'scf n=<n> domain=<name>'");
            for (const auto& tok : split(line.substr(4), ' ')) {
                if (tok.rfind("n=", 0) == 0)
                    f.n = parse_int(tok.substr(2), lineno, "voter count");
                else if (tok.rfind("domain=", 0) == 0)
                    domain_name = tok.substr(7);
                else if (!tok.empty())
                    fail(lineno, "unknown header field '" + tok + "'");
            }
            if (f.n < 1) fail(lineno, "missing voter count");
            seen_header = true;
            continue;
        }
        auto arrow = line.find("->");
        if (arrow == std::string::npos) fail(lineno, "expected 'i1 ... in -> alt'");
        auto idx_toks = split(trim(line.substr(0, arrow)), ' ');
        idx_toks.erase(std::remove(idx_toks.begin(), idx_toks.end(), ""), idx_toks.end());
        if (static_cast<int>(idx_toks.size()) != f.n)
            fail(lineno, "expected " + std::to_string(f.n) + " preference indices");
        std::vector<int> prof(f.n);
        for (int i = 0; i < f.n; ++i) {
            prof[i] = parse_int(idx_toks[i], lineno, "preference index") - 1;
            if (prof[i] < 0 || prof[i] >= ld.domain.size())
                fail(lineno, "preference index out of range");
        }
        auto coords = split(trim(line.substr(arrow + 2)), ',');
        if (static_cast<int>(coords.size()) != space.components())
            fail(lineno, "outcome tuple has the wrong arity");
        Alt a(space.components());
        for (int s = 0; s < space.components(); ++s) {
            try {
                a[s] = ld.element_of(s, coords[s]);
            } catch (const InputError& e) {
                fail(lineno, e.what());
            }
        }
        int cell = encode_profile(prof, ld.domain.size());
        if (cell != static_cast<int>(table.size()))
            fail(lineno, "profiles must appear once each, in ascending order");
        table.push_back(space.encode(a));
    }
    if (!seen_header) throw InputError("missing 'scf' header");
    f.domain_size = ld.domain.size();
    f.table = std::move(table);
    long long expected = checked_table_size(f.domain_size, f.n);
    if (static_cast<long long>(f.table.size()) != expected)
        throw InputError("rule table is incomplete");
    return {std::move(f), domain_name};
}

std::string serialize_fbr(const Fbr& f) {
    std::string out =
        "fbr s=" + std::to_string(f.component + 1) + " n=" + std::to_string(f.n) + "\n";
    for (int mask = 0; mask < static_cast<int>(f.ballots.size()); ++mask)
        out += "J=" + std::to_string(mask) + " b=" + std::to_string(f.ballots[mask]) + "\n";
    return out;
}

Fbr parse_fbr(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    Fbr f;
    bool seen_header = false;
    std::vector<int> ballots;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            if (line.rfind("fbr ", 0) != 0) fail(lineno, "expected 'fbr s=<s> n=<n>'");
            for (const auto& tok : split(line.substr(4), ' ')) {
                if (tok.rfind("s=", 0) == 0)
                    f.component = parse_int(tok.substr(2), lineno, "component") - 1;
                else if (tok.rfind("n=", 0) == 0)
                    f.n = parse_int(tok.substr(2), lineno, "voter count");
                else if (!tok.empty())
                    fail(lineno, "unknown header field '" + tok + "'");
            }
            if (f.n < 1 || f.n > 16) fail(lineno, "voter count out of range");
            if (f.component < 0) fail(lineno, "component out of range");
            ballots.assign(1 << f.n, -1);
            seen_header = true;
            continue;
        }
        auto toks = split(line, ' ');
        toks.erase(std::remove(toks.begin(), toks.end(), ""), toks.end());
        if (toks.size() != 2 || toks[0].rfind("J=", 0) != 0 || toks[1].rfind("b=", 0) != 0)
            fail(lineno, "expected 'J=<bitmask> b=<element>'");
        int mask = parse_int(toks[0].substr(2), lineno, "coalition bitmask");
        int b = parse_int(toks[1].substr(2), lineno, "ballot element");
        if (mask < 0 || mask >= static_cast<int>(ballots.size()))
            fail(lineno, "coalition bitmask out of range");
        if (ballots[mask] != -1) fail(lineno, "duplicate coalition");
        ballots[mask] = b;
    }
    if (!seen_header) throw InputError("missing 'fbr' header");
    for (int mask = 0; mask < static_cast<int>(ballots.size()); ++mask)
        if (ballots[mask] == -1)
            throw InputError("missing ballot for coalition " + std::to_string(mask));
    f.ballots = std::move(ballots);
    return f;
}

std::string graph_edge_list(const Graph& g, int offset) {
    std::string out;
    for (const auto& [u, v, label] : g.edges()) {
        out += std::to_string(u + offset) + " " + std::to_string(v + offset);
        if (!label.empty()) out += " " + label;
        out += "\n";
    }
    return out;
}

std::string emit_report(const VerificationReport& rep, bool json) {
    if (json) {
        nlohmann::json j;
        j["claim"] = rep.claim;
        j["status"] = status_name(rep.status);
        j["scope"] = rep.scope;
        j["counts"] = rep.counts;
        j["witnesses"] = rep.witnesses;
        return j.dump(2) + "\n";
    }
    std::string out;
    out += "CLAIM: " + rep.claim + "\n";
    out += "STATUS: " + status_name(rep.status) + "\n";
    out += "SCOPE: " + rep.scope + "\n";
    for (const auto& [key, value] : rep.counts)
        out += "COUNT " + key + ": " + std::to_string(value) + "\n";
    for (const auto& w : rep.witnesses) out += "WITNESS: " + w + "\n";
    return out;
}

int exit_code_for(Status s) {
    switch (s) {
        case Status::Verified: return 0;
        case Status::Refuted: return 1;
        case Status::HypothesisUnmet: return 2;
        case Status::BudgetExhausted: return 3;
    }
    return 2;
}

}  // namespace mhd
