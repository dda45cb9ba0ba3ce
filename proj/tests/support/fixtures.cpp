#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unistd.h>
#include <stdexcept>

#include "xplan/lang/parser.hpp"
#include "xplan/lang/validate.hpp"

namespace xplan::testing {

grounding::GroundedModel ground_text(const std::string& domain, const std::string& instance,
                                     const grounding::GroundOptions& options) {
    return grounding::ground(lang::validate(lang::parse_domain(domain), lang::parse_instance(instance)), options);
}

grounding::GroundedModel ground_librarian(const scenario::LibrarianConfig& config) {
    scenario::LibrarianFiles files = scenario::build_librarian(config);
    return ground_text(files.domain_text, files.instance_text);
}

namespace {

const grounding::GroundFluent& fluent_at(const grounding::GroundedModel& model, const std::string& fluent) {
    auto slot = model.slot_of(fluent);
    if (!slot) throw std::invalid_argument("no state fluent " + fluent);
    return model.state_fluents()[static_cast<std::size_t>(*slot)];
}

} // namespace

void set_value(const grounding::GroundedModel& model, grounding::GroundState& s, const std::string& fluent,
               const std::string& value) {
    const auto& f = fluent_at(model, fluent);
    auto it = std::find(f.value_names.begin(), f.value_names.end(), value);
    if (it == f.value_names.end()) throw std::invalid_argument(fluent + " has no value " + value);
    s.values[static_cast<std::size_t>(f.slot)] = static_cast<int>(it - f.value_names.begin());
}

std::string value_of(const grounding::GroundedModel& model, const grounding::GroundState& s,
                     const std::string& fluent) {
    const auto& f = fluent_at(model, fluent);
    return f.value_names[static_cast<std::size_t>(s.values[static_cast<std::size_t>(f.slot)])];
}

grounding::ActionId action_named(const grounding::GroundedModel& model, const std::string& label) {
    for (const auto& a : model.actions()) {
        if (a.label() == label) return a.index;
    }
    throw std::invalid_argument("no action " + label);
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("xplan_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

} // namespace xplan::testing
