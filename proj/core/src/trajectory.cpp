#include "sweep/trajectory.hpp"

#include "sweep/errors.hpp"
#include "sweep/numeric.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace sweep {

namespace {

constexpr std::string_view kHeader =
    "step,susceptible,recovered,presymptomatic,asymptomatic,symptomatic,"
    "hospitalized,icu,deaths";

} // namespace

std::filesystem::path task_csv_path(const std::filesystem::path& dir,
                                    std::int64_t task_id) {
    return dir / ("task-" + std::to_string(task_id) + ".csv");
}

void write_trajectory_csv(const Trajectory& trajectory,
                          const std::filesystem::path& path) {
    if (path.empty()) {
        throw IoError("trajectory output path is empty");
    }
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        }
        out << kHeader << '\n';
        for (std::size_t step = 0; step < trajectory.steps.size(); ++step) {
            out << step;
            for (std::int64_t count : trajectory.steps[step]) {
                out << ',' << count;
            }
            out << '\n';
        }
        out.flush();
        if (!out) {
            throw IoError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() +
                      "': " + ec.message());
    }
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    const std::string file = path.filename().string();
    auto fail = [&](int line, const std::string& message) -> void {
        throw FormatError(file + ":" + std::to_string(line) + ": " + message);
    };

    Trajectory trajectory;
    const std::string stem = path.stem().string();
    if (stem.rfind("task-", 0) == 0) {
        try {
            trajectory.task_id = parse_int(std::string_view(stem).substr(5));
        } catch (const FormatError&) {
            // not a task-<id>.csv name; leave the id at 0
        }
    }

    std::string line;
    if (!std::getline(in, line)) {
        fail(1, "empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kHeader) {
        fail(1, "bad header, expected '" + std::string(kHeader) + "'");
    }

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            fail(line_no, "blank line");
        }
        StepCounts counts{};
        std::size_t field = 0;
        std::size_t begin = 0;
        std::int64_t step_value = -1;
        while (begin <= line.size()) {
            const std::size_t end = std::min(line.find(',', begin), line.size());
            std::string_view cell(line.data() + begin, end - begin);
            std::int64_t value = 0;
            try {
                value = parse_int(cell);
            } catch (const FormatError&) {
                fail(line_no, "non-integer field '" + std::string(cell) + "'");
            }
            if (field == 0) {
                step_value = value;
            } else if (field <= kIndicatorCount) {
                if (value < 0) {
                    fail(line_no, "negative count");
                }
                counts[field - 1] = value;
            } else {
                fail(line_no, "too many fields");
            }
            ++field;
            begin = end + 1;
        }
        if (field != kIndicatorCount + 1) {
            fail(line_no, "expected " + std::to_string(kIndicatorCount + 1) +
                              " fields, got " + std::to_string(field));
        }
        if (step_value != static_cast<std::int64_t>(trajectory.steps.size())) {
            fail(line_no, "step column must count 0,1,2,... (got " +
                              std::to_string(step_value) + ")");
        }
        trajectory.steps.push_back(counts);
    }
    if (trajectory.steps.empty()) {
        fail(1, "no data rows");
    }
    return trajectory;
}

} // namespace sweep
