#include "weakval/table_render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace weakval {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string cell_text(const WeakValueCell& cell, const RenderOptions& opts) {
    if (!cell.defined) return "undef";
    if (opts.split_complex)
        return "(" + format_real(cell.value.real()) + ", " + format_real(cell.value.imag()) + ")";
    return format_complex(cell.value);
}

/// Rows of already-formatted strings, padded column by column.
std::string layout(const std::vector<std::vector<std::string>>& grid) {
    std::size_t columns = 0;
    for (const auto& row : grid) columns = std::max(columns, row.size());
    std::vector<std::size_t> width(columns, 0);
    for (const auto& row : grid)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

    std::ostringstream out;
    for (const auto& row : grid) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) line += "  ";
            line += row[c];
            if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
        }
        out << line << "\n";
    }
    return out.str();
}

ordered_json json_complex(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json json_cell(const WeakValueCell& cell) {
    if (!cell.defined) return nullptr;
    return json_complex(cell.value);
}

} // namespace

std::string format_real(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_complex(Complex z) {
    const double im = (z.imag() == 0.0) ? 0.0 : z.imag();
    std::string out = format_real(z.real());
    out += (im < 0.0) ? "-" : "+";
    out += format_real(std::abs(im));
    out += "i";
    return out;
}

std::string render_table(const WeakValueTable& t, TableFormat format, const RenderOptions& opts) {
    const std::size_t columns = t.post_labels.size();

    if (format == TableFormat::json) {
        ordered_json doc;
        doc["title"] = t.title;
        doc["post_labels"] = t.post_labels;
        doc["weights"] = t.weights;
        doc["rows"] = ordered_json::array();
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            ordered_json row;
            row["name"] = t.row_names[r];
            row["cells"] = ordered_json::array();
            for (const WeakValueCell& cell : t.rows[r]) row["cells"].push_back(json_cell(cell));
            if (t.show_average) row["average"] = json_complex(t.row_averages[r]);
            if (!t.cell_formulas.empty()) row["formulas"] = t.cell_formulas[r];
            doc["rows"].push_back(std::move(row));
        }
        if (t.show_sum) {
            doc["column_sums"] = ordered_json::array();
            for (const WeakValueCell& cell : t.column_sums)
                doc["column_sums"].push_back(json_cell(cell));
            if (t.show_average) doc["sum_of_row_averages"] = json_complex(t.sum_of_row_averages());
        }
        if (t.show_sum_of_squares) {
            doc["column_sums_of_squares"] = ordered_json::array();
            for (std::size_t c = 0; c < columns; ++c)
                doc["column_sums_of_squares"].push_back(json_cell(t.column_sum_of_squares(c)));
            if (t.show_average)
                doc["sum_of_squares_average"] = json_complex(t.weighted_sum_of_squares_average());
        }
        return doc.dump(2) + "\n";
    }

    // text and csv share the same grid of strings
    std::vector<std::vector<std::string>> grid;
    {
        std::vector<std::string> row{"weight"};
        for (double w : t.weights) row.push_back(format_real(w));
        grid.push_back(std::move(row));
    }
    {
        std::vector<std::string> row{"post"};
        for (const std::string& l : t.post_labels) row.push_back(l);
        if (t.show_average) row.push_back("average");
        grid.push_back(std::move(row));
    }
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        std::vector<std::string> row{t.row_names[r]};
        for (const WeakValueCell& cell : t.rows[r]) row.push_back(cell_text(cell, opts));
        if (t.show_average) row.push_back(cell_text({t.row_averages[r], true}, opts));
        grid.push_back(std::move(row));
    }
    if (t.show_sum) {
        std::vector<std::string> row{"sum"};
        for (const WeakValueCell& cell : t.column_sums) row.push_back(cell_text(cell, opts));
        if (t.show_average) row.push_back(cell_text({t.sum_of_row_averages(), true}, opts));
        grid.push_back(std::move(row));
    }
    if (t.show_sum_of_squares) {
        std::vector<std::string> row{"sum_squared"};
        for (std::size_t c = 0; c < columns; ++c)
            row.push_back(cell_text(t.column_sum_of_squares(c), opts));
        if (t.show_average)
            row.push_back(cell_text({t.weighted_sum_of_squares_average(), true}, opts));
        grid.push_back(std::move(row));
    }

    if (format == TableFormat::csv) {
        std::ostringstream out;
        for (const auto& row : grid) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c > 0) out << ",";
                out << row[c];
            }
            out << "\n";
        }
        return out.str();
    }

    std::ostringstream out;
    out << t.title << "\n";
    out << layout(grid);
    if (!t.cell_formulas.empty()) {
        out << "formulas\n";
        std::vector<std::vector<std::string>> formula_grid;
        for (std::size_t r = 0; r < t.rows.size(); ++r)
            for (std::size_t c = 0; c < columns; ++c)
                formula_grid.push_back({t.row_names[r], t.post_labels[c], t.cell_formulas[r][c]});
        out << layout(formula_grid);
    }
    return out.str();
}

} // namespace weakval
