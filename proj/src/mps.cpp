#include "lps/mps.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lps/errors.hpp"

namespace lps {

namespace {

enum class Section { start, name, objsense, rows, columns, rhs, ranges, bounds, endata };

int section_rank(Section s) { return int(s); }

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, int line_no) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + tok.size()) throw MalformedNumber(tok, line_no);
    return v;
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

// Shortest decimal representation that parses back to the same double.
std::string format_exact(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

}  // namespace

MpsDocument parse_mps(std::istream& in) {
    MpsDocument doc;
    Section section = Section::start;
    std::unordered_set<std::string> row_names;
    bool saw_objsense_header = false;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty() || raw[0] == '*') continue;

        const bool is_header = !std::isspace(static_cast<unsigned char>(raw[0]));
        std::vector<std::string> tok = tokenize(raw);
        if (tok.empty()) continue;

        if (is_header) {
            const std::string key = upper(tok[0]);
            Section next;
            if (key == "NAME") {
                next = Section::name;
                if (tok.size() > 1) doc.name = tok[1];
            } else if (key == "OBJSENSE") {
                next = Section::objsense;
                saw_objsense_header = true;
                if (tok.size() > 1) {
                    const std::string v = upper(tok[1]);
                    doc.objsense = (v == "MAX" || v == "MAXIMIZE") ? Sense::maximize
                                                                   : Sense::minimize;
                    saw_objsense_header = false;
                }
            } else if (key == "ROWS") {
                next = Section::rows;
            } else if (key == "COLUMNS") {
                next = Section::columns;
            } else if (key == "RHS") {
                next = Section::rhs;
            } else if (key == "RANGES") {
                next = Section::ranges;
            } else if (key == "BOUNDS") {
                next = Section::bounds;
            } else if (key == "ENDATA") {
                section = Section::endata;
                break;
            } else {
                throw UnknownSection("unknown section '" + tok[0] + "' at line " +
                                     std::to_string(line_no));
            }
            if (section_rank(next) <= section_rank(section))
                throw UnknownSection("section '" + tok[0] + "' out of order at line " +
                                     std::to_string(line_no));
            section = next;
            continue;
        }

        switch (section) {
            case Section::objsense: {
                if (saw_objsense_header) {
                    const std::string v = upper(tok[0]);
                    doc.objsense = (v == "MAX" || v == "MAXIMIZE") ? Sense::maximize
                                                                   : Sense::minimize;
                    saw_objsense_header = false;
                }
                break;
            }
            case Section::rows: {
                if (tok.size() < 2)
                    throw UnknownSection("bad ROWS line " + std::to_string(line_no));
                const std::string kind = upper(tok[0]);
                MpsRowKind k;
                if (kind == "N") k = MpsRowKind::n;
                else if (kind == "L") k = MpsRowKind::l;
                else if (kind == "G") k = MpsRowKind::g;
                else if (kind == "E") k = MpsRowKind::e;
                else throw UnknownSection("unknown row kind '" + tok[0] + "' at line " +
                                          std::to_string(line_no));
                if (!row_names.insert(tok[1]).second)
                    throw DuplicateRow("duplicate row '" + tok[1] + "' at line " +
                                       std::to_string(line_no));
                doc.rows.push_back({k, tok[1]});
                break;
            }
            case Section::columns: {
                if (raw.find("'MARKER'") != std::string::npos ||
                    raw.find("MARKER") != std::string::npos) {
                    doc.warnings.push_back("line " + std::to_string(line_no) +
                                           ": MARKER record ignored");
                    break;
                }
                if (tok.size() < 3 || tok.size() % 2 == 0)
                    throw MalformedNumber(raw, line_no);
                for (std::size_t f = 1; f + 1 < tok.size(); f += 2) {
                    if (!row_names.count(tok[f]))
                        throw UndeclaredRow("COLUMNS entry references undeclared row '" +
                                            tok[f] + "' at line " + std::to_string(line_no));
                    doc.columns.push_back({tok[0], tok[f], parse_number(tok[f + 1], line_no)});
                }
                break;
            }
            case Section::rhs:
            case Section::ranges: {
                // Odd token count means a leading set name; pairs follow.
                std::size_t first = tok.size() % 2 == 1 ? 1 : 0;
                std::string set = first == 1 ? tok[0] : "";
                if (tok.size() - first < 2) throw MalformedNumber(raw, line_no);
                auto& dest = section == Section::rhs ? doc.rhs : doc.ranges;
                for (std::size_t f = first; f + 1 < tok.size(); f += 2) {
                    if (!row_names.count(tok[f]))
                        throw UndeclaredRow("entry references undeclared row '" + tok[f] +
                                            "' at line " + std::to_string(line_no));
                    dest.push_back({set, tok[f], parse_number(tok[f + 1], line_no)});
                }
                break;
            }
            case Section::bounds: {
                if (tok.size() < 3)
                    throw UnknownSection("bad BOUNDS line " + std::to_string(line_no));
                const std::string kind = upper(tok[0]);
                MpsBoundKind k;
                bool needs_value = false;
                if (kind == "UP") { k = MpsBoundKind::up; needs_value = true; }
                else if (kind == "LO") { k = MpsBoundKind::lo; needs_value = true; }
                else if (kind == "FX") { k = MpsBoundKind::fx; needs_value = true; }
                else if (kind == "FR") k = MpsBoundKind::fr;
                else if (kind == "MI") k = MpsBoundKind::mi;
                else if (kind == "PL") k = MpsBoundKind::pl;
                else if (kind == "BV") k = MpsBoundKind::bv;
                else throw UnknownSection("unknown bound kind '" + tok[0] + "' at line " +
                                          std::to_string(line_no));
                double value = 0.0;
                if (needs_value) {
                    if (tok.size() < 4) throw MalformedNumber(raw, line_no);
                    value = parse_number(tok[3], line_no);
                }
                doc.bounds.push_back({k, tok[1], tok[2], value});
                break;
            }
            default:
                throw UnknownSection("data before any section at line " +
                                     std::to_string(line_no));
        }
    }

    if (section != Section::endata) {
        doc.missing_endata = true;
        doc.warnings.push_back("missing ENDATA; accepted input as-is");
    }
    if (std::none_of(doc.rows.begin(), doc.rows.end(),
                     [](const MpsDocument::Row& r) { return r.kind == MpsRowKind::n; }))
        throw MissingObjectiveRow("no N row in '" + doc.name + "'");
    return doc;
}

MpsDocument parse_mps(const std::string& text) {
    std::istringstream in(text);
    return parse_mps(in);
}

MpsDocument parse_mps_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return parse_mps(in);
}

GeneralLP to_general_lp(const MpsDocument& doc) {
    std::vector<std::string> ignored;
    return to_general_lp(doc, &ignored);
}

GeneralLP to_general_lp(const MpsDocument& doc, std::vector<std::string>* warnings) {
    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };

    // First N row is the objective; later N rows are dropped (Netlib convention).
    std::string obj_row;
    std::unordered_map<std::string, int> row_index;       // constraint rows
    std::unordered_set<std::string> dropped_rows;
    std::vector<const MpsDocument::Row*> constraint_rows;
    for (const auto& row : doc.rows) {
        if (row.kind == MpsRowKind::n) {
            if (obj_row.empty()) {
                obj_row = row.name;
            } else {
                dropped_rows.insert(row.name);
                warn("extra N row '" + row.name + "' dropped");
            }
            continue;
        }
        row_index.emplace(row.name, int(constraint_rows.size()));
        constraint_rows.push_back(&row);
    }

    // Columns in order of first appearance.
    std::unordered_map<std::string, int> col_index;
    std::vector<std::string> col_names;
    for (const auto& e : doc.columns) {
        if (col_index.emplace(e.column, int(col_names.size())).second)
            col_names.push_back(e.column);
    }

    GeneralLP lp;
    lp.name = doc.name;
    lp.sense = doc.objsense;
    lp.resize(int(constraint_rows.size()), int(col_names.size()));
    for (int i = 0; i < lp.num_rows; ++i) {
        switch (constraint_rows[i]->kind) {
            case MpsRowKind::l: lp.row_kind[i] = RowKind::le; break;
            case MpsRowKind::g: lp.row_kind[i] = RowKind::ge; break;
            default:            lp.row_kind[i] = RowKind::eq; break;
        }
    }

    std::unordered_map<std::string, std::unordered_set<std::string>> seen_cells;
    for (const auto& e : doc.columns) {
        const int j = col_index.at(e.column);
        if (!seen_cells[e.column].insert(e.row).second)
            warn("duplicate COLUMNS entry (" + e.column + ", " + e.row + ") summed");
        if (e.row == obj_row) {
            lp.objective[j] += e.value;
        } else if (auto it = row_index.find(e.row); it != row_index.end()) {
            lp.at(it->second, j) += e.value;
        }
        // entries on dropped N rows are ignored
    }

    for (const auto& e : doc.rhs) {
        if (e.row == obj_row) {
            // The published Netlib optima quote the raw c.x optimum, without
            // applying an objective-row RHS entry as a constant.
            warn("RHS entry on objective row '" + e.row + "' ignored");
        } else if (auto it = row_index.find(e.row); it != row_index.end()) {
            lp.rhs[it->second] = e.value;
        } else if (!dropped_rows.count(e.row)) {
            throw UndeclaredRow("RHS entry for unknown row '" + e.row + "'");
        }
    }

    for (const auto& e : doc.ranges) {
        if (auto it = row_index.find(e.row); it != row_index.end())
            lp.range[it->second] = e.value;
        else if (!dropped_rows.count(e.row) && e.row != obj_row)
            throw UndeclaredRow("RANGES entry for unknown row '" + e.row + "'");
    }

    for (const auto& b : doc.bounds) {
        auto it = col_index.find(b.column);
        if (it == col_index.end()) {
            warn("bound on unknown column '" + b.column + "' ignored");
            continue;
        }
        const int j = it->second;
        switch (b.kind) {
            case MpsBoundKind::up:
                lp.upper[j] = b.value;
                if (b.value < 0.0 && lp.lower[j] == 0.0)
                    warn("negative UP bound on '" + b.column + "' keeps lower bound 0");
                break;
            case MpsBoundKind::lo: lp.lower[j] = b.value; break;
            case MpsBoundKind::fx: lp.lower[j] = lp.upper[j] = b.value; break;
            case MpsBoundKind::fr:
                lp.lower[j] = -kInfinity;
                lp.upper[j] = kInfinity;
                break;
            case MpsBoundKind::mi: lp.lower[j] = -kInfinity; break;
            case MpsBoundKind::pl: lp.upper[j] = kInfinity; break;
            case MpsBoundKind::bv:
                throw UnsupportedBoundKind("BV bound on '" + b.column +
                                           "': integer variables are not supported");
        }
    }

    return lp;
}

std::string write_mps(const MpsDocument& doc) {
    std::ostringstream out;
    auto pad = [](const std::string& s, std::size_t w) {
        return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' ');
    };

    out << "NAME          " << doc.name << "\n";
    if (doc.objsense == Sense::maximize) out << "OBJSENSE\n    MAX\n";
    out << "ROWS\n";
    for (const auto& row : doc.rows) {
        char k = row.kind == MpsRowKind::n   ? 'N'
                 : row.kind == MpsRowKind::l ? 'L'
                 : row.kind == MpsRowKind::g ? 'G'
                                             : 'E';
        out << " " << k << "  " << row.name << "\n";
    }
    auto emit_entries = [&](const char* header, const std::vector<MpsDocument::Entry>& es) {
        out << header << "\n";
        for (const auto& e : es)
            out << "    " << pad(e.column, 10) << pad(e.row, 10) << format_exact(e.value)
                << "\n";
    };
    emit_entries("COLUMNS", doc.columns);
    emit_entries("RHS", doc.rhs);
    if (!doc.ranges.empty()) emit_entries("RANGES", doc.ranges);
    if (!doc.bounds.empty()) {
        out << "BOUNDS\n";
        for (const auto& b : doc.bounds) {
            const char* k = b.kind == MpsBoundKind::up   ? "UP"
                            : b.kind == MpsBoundKind::lo ? "LO"
                            : b.kind == MpsBoundKind::fx ? "FX"
                            : b.kind == MpsBoundKind::fr ? "FR"
                            : b.kind == MpsBoundKind::mi ? "MI"
                            : b.kind == MpsBoundKind::pl ? "PL"
                                                         : "BV";
            out << " " << k << " " << pad(b.set, 10) << pad(b.column, 10);
            if (b.kind == MpsBoundKind::up || b.kind == MpsBoundKind::lo ||
                b.kind == MpsBoundKind::fx)
                out << format_exact(b.value);
            out << "\n";
        }
    }
    out << "ENDATA\n";
    return out.str();
}

MpsDocument to_mps_document(const GeneralLP& lp) {
    MpsDocument doc;
    doc.name = lp.name.empty() ? "LP" : lp.name;
    doc.objsense = lp.sense;

    doc.rows.push_back({MpsRowKind::n, "COST"});
    auto row_name = [](int i) { return "R" + std::to_string(i + 1); };
    auto col_name = [](int j) { return "X" + std::to_string(j + 1); };
    for (int i = 0; i < lp.num_rows; ++i) {
        MpsRowKind k = lp.row_kind[i] == RowKind::eq   ? MpsRowKind::e
                       : lp.row_kind[i] == RowKind::le ? MpsRowKind::l
                       : lp.row_kind[i] == RowKind::ge ? MpsRowKind::g
                                                       : MpsRowKind::n;
        doc.rows.push_back({k, row_name(i)});
    }

    for (int j = 0; j < lp.num_cols; ++j) {
        if (lp.objective[j] != 0.0)
            doc.columns.push_back({col_name(j), "COST", lp.objective[j]});
        for (int i = 0; i < lp.num_rows; ++i)
            if (lp.at(i, j) != 0.0)
                doc.columns.push_back({col_name(j), row_name(i), lp.at(i, j)});
    }

    if (lp.objective_constant != 0.0)
        doc.rhs.push_back({"RHS", "COST", lp.objective_constant});
    for (int i = 0; i < lp.num_rows; ++i)
        if (lp.rhs[i] != 0.0) doc.rhs.push_back({"RHS", row_name(i), lp.rhs[i]});
    for (int i = 0; i < lp.num_rows; ++i)
        if (lp.range[i].has_value()) doc.ranges.push_back({"RNG", row_name(i), *lp.range[i]});

    for (int j = 0; j < lp.num_cols; ++j) {
        const double lo = lp.lower[j], hi = lp.upper[j];
        if (lo == 0.0 && hi == kInfinity) continue;
        if (lo == hi) {
            doc.bounds.push_back({MpsBoundKind::fx, "BND", col_name(j), lo});
            continue;
        }
        if (lo == -kInfinity && hi == kInfinity) {
            doc.bounds.push_back({MpsBoundKind::fr, "BND", col_name(j), 0.0});
            continue;
        }
        if (lo == -kInfinity) doc.bounds.push_back({MpsBoundKind::mi, "BND", col_name(j), 0.0});
        else if (lo != 0.0) doc.bounds.push_back({MpsBoundKind::lo, "BND", col_name(j), lo});
        if (hi != kInfinity) doc.bounds.push_back({MpsBoundKind::up, "BND", col_name(j), hi});
    }

    return doc;
}

}  // namespace lps
