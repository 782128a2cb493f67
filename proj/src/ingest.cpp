#include "ivts/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "ivts/errors.hpp"
#include "ivts/text.hpp"

namespace ivts {

void IngestConfig::validate() const {
    if (window < 1) throw InvalidArgument("window must be >= 1");
}

namespace {

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

struct MinMax {
    double lo;
    double hi;
};

struct SeriesDays {
    std::string label;
    // day -> dim -> running [min, max]
    std::map<std::string, std::map<std::string, MinMax>> days;
};

} // namespace

IngestResult ingest_raw_csv(const std::filesystem::path& path, const IngestConfig& cfg) {
    cfg.validate();
    const std::size_t stride = cfg.stride == 0 ? cfg.window : cfg.stride;

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");

    std::map<std::string, SeriesDays> series;
    std::set<std::string> all_dims;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(lineno) + ": ";
        if (!header_seen) {
            header_seen = true;
            if (trim(line) != "series_id,dim,timestamp,value,label") {
                throw DataError(where + "expected header series_id,dim,timestamp,value,label");
            }
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 5) throw DataError(where + "expected 5 fields");
        if (f[0].empty() || f[1].empty() || f[4].empty()) throw DataError(where + "empty field");
        const auto day = f[2].substr(0, std::min<std::size_t>(10, f[2].size()));
        if (!is_iso_date(day) || (f[2].size() > 10 && f[2][10] != 'T' && f[2][10] != ' ')) {
            throw DataError(where + "timestamp must start with YYYY-MM-DD");
        }
        double value = 0.0;
        try {
            value = parse_double(f[3]);
        } catch (const Error& e) {
            throw DataError(where + e.what());
        }
        if (!std::isfinite(value)) throw DataError(where + "value must be finite");

        SeriesDays& s = series[std::string(f[0])];
        if (s.label.empty()) {
            s.label = std::string(f[4]);
        } else if (s.label != f[4]) {
            throw DataError(where + "series '" + std::string(f[0]) + "' has conflicting labels");
        }
        const std::string dim(f[1]);
        all_dims.insert(dim);
        auto [it, fresh] = s.days[std::string(day)].try_emplace(dim, MinMax{value, value});
        if (!fresh) {
            it->second.lo = std::min(it->second.lo, value);
            it->second.hi = std::max(it->second.hi, value);
        }
    }
    if (series.empty()) throw EmptyInput(path.string() + ": no readings");

    IngestResult result;
    result.dim_names.assign(all_dims.begin(), all_dims.end());

    std::set<std::string> label_set;
    for (const auto& [id, s] : series) label_set.insert(s.label);
    bool numeric = true;
    for (const auto& l : label_set) {
        try {
            if (parse_int(l) < 1) numeric = false;
        } catch (const Error&) {
            numeric = false;
        }
    }
    std::map<std::string, int> label_of;
    if (numeric) {
        for (const auto& l : label_set) {
            const int v = static_cast<int>(parse_int(l));
            label_of[l] = v;
            result.dataset.classes = std::max(result.dataset.classes, v);
        }
        result.label_names.resize(static_cast<std::size_t>(result.dataset.classes));
        for (const auto& [name, v] : label_of) result.label_names[static_cast<std::size_t>(v - 1)] = name;
    } else {
        int next = 1;
        for (const auto& l : label_set) {
            label_of[l] = next++;
            result.label_names.push_back(l);
        }
        result.dataset.classes = next - 1;
    }

    for (const auto& [id, s] : series) {
        // complete days only, in calendar order
        std::vector<const std::map<std::string, MinMax>*> days;
        for (const auto& [day, dims] : s.days) {
            if (dims.size() == all_dims.size()) {
                days.push_back(&dims);
            } else {
                result.warnings.push_back("series '" + id + "' day " + day + ": missing " +
                                          std::to_string(all_dims.size() - dims.size()) +
                                          " dimension(s), dropped");
            }
        }
        for (std::size_t start = 0; start + cfg.window <= days.size(); start += stride) {
            std::vector<IntervalSeries> rows;
            for (const auto& dim : result.dim_names) {
                std::vector<Interval> values;
                values.reserve(cfg.window);
                for (std::size_t t = start; t < start + cfg.window; ++t) {
                    const MinMax& mm = days[t]->at(dim);
                    values.emplace_back(mm.lo, mm.hi);
                }
                rows.emplace_back(std::move(values));
            }
            result.dataset.items.push_back({MvIntervalSeries(std::move(rows)), label_of.at(s.label)});
        }
    }
    if (result.dataset.items.empty()) {
        throw DataError(path.string() + ": no series has " + std::to_string(cfg.window) +
                        " complete days");
    }
    return result;
}

} // namespace ivts
