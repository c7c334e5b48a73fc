#pragma once

#include <string>

#include "weakval/weak_values.hpp"

namespace weakval {

enum class TableFormat { text, csv, json };

struct RenderOptions {
    /// Render complex cells as "(re, im)" pairs instead of "a+bi".
    bool split_complex = false;
};

/// Fixed 12-significant-digit rendering; identical inputs produce
/// byte-identical output.
std::string render_table(const WeakValueTable& table, TableFormat format,
                         const RenderOptions& opts = {});

/// "%.12g" with negative zero normalized away.
std::string format_real(double v);

/// "a+bi" with both parts at 12 significant digits, e.g. "2+0i", "0+1i".
std::string format_complex(Complex z);

} // namespace weakval
