#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "slscc/linear_model.hpp"

namespace slscc {

/// Shortest decimal rendering that parses back to the same double.
inline std::string format_double(double v) {
    if (v == 0.0) return "0";
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

namespace detail {

inline void writeTerms(std::ostream& os, const std::vector<std::pair<int, double>>& terms,
                       const LinearModel& model, bool leadingSign) {
    bool first = !leadingSign;
    for (const auto& [idx, c] : terms) {
        if (c == 0.0) continue;
        if (first) {
            os << (c < 0 ? "- " : "");
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        os << format_double(std::abs(c)) << " " << model.vars[idx].name;
    }
    if (first) os << "0";
}

} // namespace detail

/// Plain-text listing of a model: objective, rows, bounds, integrality.
/// Byte-stable for a fixed model.
inline void write_model(const LinearModel& model, std::ostream& os) {
    os << "minimize\n obj: " << format_double(model.objectiveConstant);
    for (int j = 0; j < model.numVars(); ++j) {
        const double c = model.vars[j].cost;
        if (c == 0.0) continue;
        os << (c < 0 ? " - " : " + ") << format_double(std::abs(c)) << " " << model.vars[j].name;
    }
    os << "\nsubject to\n";
    for (const auto& rowC : model.rows) {
        os << " " << rowC.name << ": ";
        detail::writeTerms(os, rowC.coeffs, model, true);
        switch (rowC.sense) {
        case Sense::LE: os << " <= "; break;
        case Sense::EQ: os << " = "; break;
        case Sense::GE: os << " >= "; break;
        }
        os << format_double(rowC.rhs) << "\n";
    }
    os << "bounds\n";
    for (const auto& v : model.vars)
        os << " " << format_double(v.lo) << " <= " << v.name << " <= " << format_double(v.hi)
           << "\n";
    os << "general\n";
    bool any = false;
    for (const auto& v : model.vars)
        if (v.integral) {
            os << (any ? " " : " ") << v.name;
            any = true;
        }
    if (any) os << "\n";
    os << "end\n";
}

inline std::string model_to_string(const LinearModel& model) {
    std::ostringstream ss;
    write_model(model, ss);
    return ss.str();
}

namespace detail {

inline double parseNum(const std::string& tok) {
    if (tok == "inf") return kInf;
    if (tok == "-inf") return -kInf;
    return std::strtod(tok.c_str(), nullptr);
}

} // namespace detail

/// Parses the write_model format back into a LinearModel. Variables are
/// declared by the bounds section; the reader therefore scans the whole text
/// before resolving row coefficients.
inline LinearModel read_model(std::istream& is) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(is, line);) lines.push_back(line);

    enum Section { None, Objective, Rows, Bounds, General };
    Section sec = None;
    LinearModel model;
    std::map<std::string, int> index;

    // pass 1: variables from the bounds section
    for (const auto& line : lines) {
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "bounds") { sec = Bounds; continue; }
        if (tok == "minimize" || tok == "subject" || tok == "general" || tok == "end" ||
            tok.empty()) { sec = None; continue; }
        if (sec != Bounds) continue;
        // "<lo> <= <name> <= <hi>"
        std::string le1, name, le2, hiTok;
        ls >> le1 >> name >> le2 >> hiTok;
        const int id = model.addVar(name, detail::parseNum(tok), detail::parseNum(hiTok), 0.0);
        index[name] = id;
    }

    const auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw Error("lp text references unknown variable " + name);
        return it->second;
    };

    sec = None;
    for (const auto& line : lines) {
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "minimize") { sec = Objective; continue; }
        if (tok == "subject") { sec = Rows; continue; }
        if (tok == "bounds") { sec = None; continue; }
        if (tok == "general") { sec = General; continue; }
        if (tok == "end" || tok.empty()) { sec = None; continue; }

        if (sec == Objective) {
            // "obj: <const> [+|-] <c> <name> ..."
            std::string constTok;
            ls >> constTok;
            model.objectiveConstant = detail::parseNum(constTok);
            std::string sign, coef, name;
            while (ls >> sign >> coef >> name)
                model.vars[lookup(name)].cost = (sign == "-" ? -1.0 : 1.0) * detail::parseNum(coef);
        } else if (sec == Rows) {
            Constraint row;
            row.name = tok.substr(0, tok.size() - 1); // strip ':'
            std::vector<std::string> toks;
            for (std::string t; ls >> t;) toks.push_back(t);
            std::size_t i = 0;
            double sign = 1.0;
            while (i < toks.size()) {
                if (toks[i] == "<=" || toks[i] == "=" || toks[i] == ">=") {
                    row.sense = toks[i] == "<=" ? Sense::LE
                                                : (toks[i] == "=" ? Sense::EQ : Sense::GE);
                    row.rhs = detail::parseNum(toks[i + 1]);
                    i += 2;
                    continue;
                }
                if (toks[i] == "+") { sign = 1.0; ++i; continue; }
                if (toks[i] == "-") { sign = -1.0; ++i; continue; }
                if (toks[i] == "0" && i + 1 < toks.size() &&
                    (toks[i + 1] == "<=" || toks[i + 1] == "=" || toks[i + 1] == ">=")) {
                    ++i; // empty left-hand side placeholder
                    continue;
                }
                row.coeffs.push_back({lookup(toks[i + 1]), sign * detail::parseNum(toks[i])});
                sign = 1.0;
                i += 2;
            }
            model.rows.push_back(std::move(row));
        } else if (sec == General) {
            model.vars[lookup(tok)].integral = true;
            for (std::string t; ls >> t;) model.vars[lookup(t)].integral = true;
        }
    }
    return model;
}

/// Writes a model to a file; export is deterministic for a fixed model.
inline void export_model(const LinearModel& model, const std::string& path) {
    std::string text = model_to_string(model);
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw Error("cannot open " + path + " for writing");
    const std::size_t n = std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
    if (n != text.size()) throw Error("short write to " + path);
}

} // namespace slscc
