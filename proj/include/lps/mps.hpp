#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lps/lp_model.hpp"

namespace lps {

enum class MpsRowKind { n, l, g, e };

enum class MpsBoundKind { up, lo, fx, fr, mi, pl, bv };

/// Faithful in-order representation of one MPS file. Entries keep file
/// order; nothing is merged or defaulted here — that happens in
/// to_general_lp().
struct MpsDocument {
    struct Row {
        MpsRowKind kind;
        std::string name;
    };
    struct Entry {  // COLUMNS / RHS / RANGES triple
        std::string column;  // column name, or rhs/range set name
        std::string row;
        double value;
    };
    struct Bound {
        MpsBoundKind kind;
        std::string set;
        std::string column;
        double value;  // meaningful for up/lo/fx only
    };

    std::string name;
    Sense objsense = Sense::minimize;
    std::vector<Row> rows;
    std::vector<Entry> columns;
    std::vector<Entry> rhs;
    std::vector<Entry> ranges;
    std::vector<Bound> bounds;
    std::vector<std::string> warnings;
    bool missing_endata = false;
};

/// Parses fixed- or free-format MPS text. Sections must appear in the
/// order NAME, ROWS, COLUMNS, RHS, [RANGES], [BOUNDS], ENDATA; '*' lines
/// are comments; a missing ENDATA is tolerated with a warning.
///
/// Throws UnknownSection, UndeclaredRow, DuplicateRow, MissingObjectiveRow,
/// MalformedNumber.
MpsDocument parse_mps(std::istream& in);
MpsDocument parse_mps(const std::string& text);
MpsDocument parse_mps_file(const std::string& path);

/// Builds the dense GeneralLP: first N row becomes the objective (extras are
/// dropped with a warning), absent RHS entries are zero, duplicate COLUMNS
/// triples for one (column, row) cell are summed with a warning.
///
/// Throws UnsupportedBoundKind for BV bounds.
GeneralLP to_general_lp(const MpsDocument& doc);
GeneralLP to_general_lp(const MpsDocument& doc, std::vector<std::string>* warnings);

/// Emits `doc` in column-aligned MPS; parse_mps(write_mps(doc)) reproduces
/// the document exactly (values are printed round-trip exact).
std::string write_mps(const MpsDocument& doc);

/// Represents a generated LP as an MpsDocument (rows R1..Rm, columns X1..Xn,
/// objective row COST), so generated instances are files interchangeable
/// with Netlib inputs.
MpsDocument to_mps_document(const GeneralLP& lp);

}  // namespace lps
