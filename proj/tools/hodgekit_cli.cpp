// hodgekit command line: cohomology of weighted cell complexes and the
// flat-end Euler characteristic formulas, over exact rationals.
//
// Output protocol: one `key=value` per line, keys in natural sort order,
// rationals printed p/q (integers bare). Exit 0 on success, 1 on a domain
// error (with an error=<Code> line), 2 on a parse error.

#include <hodgekit/cell_complex.hpp>
#include <hodgekit/errors.hpp>
#include <hodgekit/flat_ends.hpp>
#include <hodgekit/io.hpp>
#include <hodgekit/models.hpp>
#include <hodgekit/pairs.hpp>
#include <hodgekit/weighted.hpp>

#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace hodgekit;

namespace {

/// Orders keys segment-wise, comparing runs of digits numerically, so that
/// dim.2 sorts before dim.16.
struct NaturalLess {
    bool operator()(const std::string& a, const std::string& b) const
    {
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (std::isdigit(static_cast<unsigned char>(a[i])) &&
                std::isdigit(static_cast<unsigned char>(b[j]))) {
                std::size_t i2 = i, j2 = j;
                while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2])))
                    ++i2;
                while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2])))
                    ++j2;
                std::string da = a.substr(i, i2 - i), db = b.substr(j, j2 - j);
                std::string ta = da.substr(std::min(da.find_first_not_of('0'), da.size() - 1));
                std::string tb = db.substr(std::min(db.find_first_not_of('0'), db.size() - 1));
                if (ta.size() != tb.size())
                    return ta.size() < tb.size();
                if (ta != tb)
                    return ta < tb;
                i = i2;
                j = j2;
            } else {
                if (a[i] != b[j])
                    return a[i] < b[j];
                ++i;
                ++j;
            }
        }
        return a.size() - i < b.size() - j;
    }
};

class Report {
public:
    void set(const std::string& key, const std::string& value) { entries_[key] = value; }
    void set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }
    void set(const std::string& key, std::int64_t value) { set(key, std::to_string(value)); }
    void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
    void set(const std::string& key, const Rat& value) { set(key, rat_to_string(value)); }

    void print() const
    {
        for (const auto& [key, value] : entries_)
            std::cout << key << "=" << value << "\n";
    }

private:
    std::map<std::string, std::string, NaturalLess> entries_;
};

struct EndOption {
    EndDescriptor descriptor;
};

/// --end nu=<ν>,n=<n>,group=<file>|trivial,cover=<c>[,parabolic]
EndDescriptor parse_end_option(const std::string& text, std::size_t cap)
{
    std::optional<std::size_t> nu, n, cover;
    std::string group_spec;
    bool parabolic = false;

    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token == "parabolic") {
            parabolic = true;
            continue;
        }
        auto eq = token.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--end", "expected key=value, got '" + token + "'");
        std::string key = token.substr(0, eq);
        std::string value = token.substr(eq + 1);
        try {
            if (key == "nu")
                nu = std::stoul(value);
            else if (key == "n")
                n = std::stoul(value);
            else if (key == "cover")
                cover = std::stoul(value);
            else if (key == "group")
                group_spec = value;
            else
                throw CLI::ValidationError("--end", "unknown key '" + key + "'");
        } catch (const CLI::ValidationError&) {
            throw;
        } catch (const std::exception&) {
            throw CLI::ValidationError("--end", "bad value for '" + key + "'");
        }
    }
    if (!nu || !n)
        throw CLI::ValidationError("--end", "nu and n are required");
    if (parabolic)
        return make_parabolic_end(*nu, *n);

    std::size_t m = *n >= *nu ? *n - *nu : 0;
    LatticeGroup group;
    if (group_spec.empty() || group_spec == "trivial") {
        group = trivial_group(m);
    } else {
        std::size_t rank = 0;
        std::vector<IntMatrix> gens = load_group_generators(group_spec, &rank);
        group = group_closure(rank, gens, cap);
    }
    return make_end(*nu, *n, std::move(group), cover.value_or(1));
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::InvalidSpec, "cannot write file '" + path + "'");
    out << contents;
}

// --- subcommand bodies ------------------------------------------------------

int cmd_validate(const std::string& path)
{
    CellComplex x = load_complex(path);
    ValidationReport report = validate(x);
    Report out;
    out.set("valid", report.ok());
    out.set("violations", report.violations.size());
    for (std::size_t i = 0; i < report.violations.size(); ++i)
        out.set("violation." + std::to_string(i),
                "dim" + std::to_string(report.violations[i].dim) + ":" + report.violations[i].id);
    out.print();
    return 0;
}

int cmd_betti(const std::string& path)
{
    CellComplex x = load_complex(path);
    Report out;
    std::vector<std::size_t> b = betti_all(x);
    for (std::size_t k = 0; k < b.size(); ++k)
        out.set("b" + std::to_string(k), b[k]);
    out.print();
    return 0;
}

int cmd_euler(const std::string& path)
{
    CellComplex x = load_complex(path);
    Report out;
    out.set("euler", static_cast<std::int64_t>(euler(x)));
    out.print();
    return 0;
}

WeightedComplex weighted_from_flags(const CellComplex& x, const std::string& weights_path,
                                    bool default_unit)
{
    if (weights_path.empty())
        return WeightedComplex(x);
    return WeightedComplex(x, load_weights(weights_path, x), default_unit);
}

int cmd_harmonic(const std::string& path, std::size_t degree, const std::string& weights_path,
                 bool default_unit, const std::string& rel_path)
{
    CellComplex x = load_complex(path);
    WeightedComplex w = weighted_from_flags(x, weights_path, default_unit);
    HarmonicBasis basis;
    if (rel_path.empty()) {
        basis = harmonic_basis(w, degree);
    } else {
        Subcomplex a = load_subcomplex(rel_path, x);
        basis = harmonic_basis(w, degree, BoundaryCondition::relative, a);
    }
    Report out;
    out.set("dim", basis.dim());
    out.print();
    return 0;
}

int cmd_hodge_split(const std::string& path, const std::string& cochain_path,
                    const std::string& weights_path, bool default_unit)
{
    CellComplex x = load_complex(path);
    WeightedComplex w = weighted_from_flags(x, weights_path, default_unit);
    Cochain v = load_cochain(cochain_path, x);
    HodgeSplit split = hodge_split(w, v.degree, v.values);
    Report out;
    out.set("deg", v.degree);
    for (std::size_t i = 0; i < x.size(v.degree); ++i) {
        const std::string& id = x.id(v.degree, i);
        out.set("harmonic." + id, split.harmonic[i]);
        out.set("exact." + id, split.exact[i]);
        out.set("coexact." + id, split.coexact[i]);
    }
    out.print();
    return 0;
}

int cmd_pair_audit(const std::string& path, const std::string& sub_path)
{
    CellComplex x = load_complex(path);
    Subcomplex a = load_subcomplex(sub_path, x);
    LesReport report = les_audit(x, a);
    Report out;
    for (const LesReport::DegreeRow& row : report.rows) {
        std::string k = std::to_string(row.degree);
        out.set("dim_rel." + k, row.dim_rel);
        out.set("dim_x." + k, row.dim_x);
        out.set("dim_a." + k, row.dim_a);
        out.set("rank_i." + k, row.rank_i);
        out.set("rank_j." + k, row.rank_j);
        out.set("rank_b." + k, row.rank_b);
        out.set("exact_rel." + k, row.exact_at_rel);
        out.set("exact_x." + k, row.exact_at_x);
        out.set("exact_a." + k, row.exact_at_a);
    }
    out.set("exact", report.all_exact());
    out.set("alternating_sum", report.alternating_sum);
    out.print();
    return 0;
}

int cmd_im_rel_abs(const std::string& path, const std::string& sub_path, std::size_t degree,
                   bool with_basis)
{
    CellComplex x = load_complex(path);
    Subcomplex a = load_subcomplex(sub_path, x);
    auto [r, basis] = image_rel_to_abs(x, a, degree);
    Report out;
    out.set("rank", r);
    if (with_basis)
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis[i].size(); ++j)
                if (basis[i][j] != 0)
                    out.set("basis." + std::to_string(i) + "." + x.id(degree, j), basis[i][j]);
    out.print();
    return 0;
}

int cmd_ker_pullback(const std::string& path, const std::string& fiber_path, std::size_t degree)
{
    CellComplex x = load_complex(path);
    Subcomplex t = load_subcomplex(fiber_path, x);
    Report out;
    out.set("dim", ker_pullback_cohomology(x, t, degree));
    out.print();
    return 0;
}

int cmd_double(const std::string& path, const std::string& sub_path, const std::string& out_prefix)
{
    CellComplex x = load_complex(path);
    Subcomplex a = load_subcomplex(sub_path, x);
    DoubleComplex d = make_double(x, a);
    Report out;
    std::vector<std::size_t> b = betti_all(d.complex());
    for (std::size_t k = 0; k < b.size(); ++k)
        out.set("b" + std::to_string(k), b[k]);
    out.set("euler", static_cast<std::int64_t>(euler(d.complex())));
    out.set("cells", d.complex().total_cells());
    WeightedComplex w(d.complex());
    for (std::size_t k = 0; k <= d.complex().top_dim(); ++k) {
        DoubleSplitDims dims = double_split(w, d.swap, k);
        out.set("inv." + std::to_string(k), dims.invariant);
        out.set("anti." + std::to_string(k), dims.anti_invariant);
    }
    if (!out_prefix.empty()) {
        write_file(out_prefix + ".cc", complex_to_text(d.complex()));
        out.set("file", out_prefix + ".cc");
    }
    out.print();
    return 0;
}

int cmd_group_closure(const std::string& path, std::size_t cap)
{
    std::size_t rank = 0;
    std::vector<IntMatrix> gens = load_group_generators(path, &rank);
    LatticeGroup group = group_closure(rank, gens, cap);
    Report out;
    out.set("order", group.order());
    out.print();
    return 0;
}

int cmd_equiv_betti(const std::string& path, std::size_t cap)
{
    std::size_t rank = 0;
    std::vector<IntMatrix> gens = load_group_generators(path, &rank);
    LatticeGroup group = group_closure(rank, gens, cap);
    std::vector<std::size_t> b = invariant_betti_all(group);
    Report out;
    for (std::size_t k = 0; k < b.size(); ++k)
        out.set("b" + std::to_string(k), b[k]);
    out.print();
    return 0;
}

int cmd_chi_equivariant(const std::string& path, std::size_t cap)
{
    std::size_t rank = 0;
    std::vector<IntMatrix> gens = load_group_generators(path, &rank);
    LatticeGroup group = group_closure(rank, gens, cap);
    Report out;
    out.set("chi", chi_equivariant(group));
    out.print();
    return 0;
}

int cmd_q_end(const std::string& end_text, std::size_t cap)
{
    EndDescriptor e = parse_end_option(end_text, cap);
    Report out;
    out.set("q", q_end(e));
    out.print();
    return 0;
}

int cmd_chi_l2(std::int64_t chi_m, const std::vector<std::string>& end_texts, std::size_t cap,
               bool book)
{
    std::vector<EndDescriptor> ends;
    for (const std::string& text : end_texts)
        ends.push_back(parse_end_option(text, cap));
    ChiL2Report report = chi_l2(chi_m, ends);
    Report out;
    out.set("chi_l2", report.chi_l2);
    if (book) {
        out.set("integral_omega", report.integral_omega);
        out.set("q_sum", report.q_sum);
    }
    out.print();
    return 0;
}

int cmd_chi_l2_warped(std::int64_t chi_m, const std::string& betti_list, const std::string& mode,
                      std::size_t n)
{
    std::vector<std::int64_t> betti;
    std::istringstream in(betti_list);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            betti.push_back(std::stoll(token));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--betti", "expected a comma-separated integer list");
        }
    }
    WarpedMode wm;
    if (mode == "cone")
        wm = WarpedMode::cone;
    else if (mode == "shrinking")
        wm = WarpedMode::shrinking;
    else
        throw CLI::ValidationError("--case", "expected 'cone' or 'shrinking'");
    Report out;
    out.set("chi_l2", chi_l2_warped(chi_m, betti, wm, n));
    out.print();
    return 0;
}

int cmd_model(const std::string& kind_name, std::size_t res, std::size_t nu, std::size_t m,
              std::size_t shells, const std::string& out_prefix)
{
    ModelSpec spec;
    spec.resolution = res;
    spec.nu = nu;
    spec.torus_rank = m;
    spec.shells = shells;
    if (kind_name == "circle")
        spec.kind = ModelKind::circle;
    else if (kind_name == "interval")
        spec.kind = ModelKind::interval;
    else if (kind_name == "torus")
        spec.kind = ModelKind::torus;
    else if (kind_name == "sphere")
        spec.kind = ModelKind::sphere;
    else if (kind_name == "ball")
        spec.kind = ModelKind::ball;
    else if (kind_name == "annulus")
        spec.kind = ModelKind::annulus;
    else if (kind_name == "end_model")
        spec.kind = ModelKind::end_model;
    else if (kind_name == "core_model")
        spec.kind = ModelKind::core_model;
    else
        throw CLI::ValidationError("--kind", "unknown model kind '" + kind_name + "'");

    BuiltModel model = build(spec);
    Report out;
    out.set("cells", model.complex().total_cells());
    write_file(out_prefix + ".cc", complex_to_text(model.complex()));
    out.set("file", out_prefix + ".cc");
    for (const auto& [name, sub] : model.subcomplexes) {
        std::string path = out_prefix + "." + name + ".sc";
        write_file(path, subcomplex_to_text(sub));
        out.set("sub." + name, path);
    }
    out.print();
    return 0;
}

int cmd_sweep(std::size_t nu, std::size_t m, std::size_t degree,
              const std::string& shells_list, std::size_t res, const std::string& r0_text,
              const std::string& step_text)
{
    std::vector<std::size_t> shells;
    std::istringstream in(shells_list);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            shells.push_back(std::stoul(token));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--shells", "expected a comma-separated list of counts");
        }
    }
    Rat r0 = parse_rational("--r0", 0, r0_text);
    Rat step = parse_rational("--step", 0, step_text);
    std::vector<SweepRow> rows = sweep(nu, m, degree, shells, res, r0, step);
    Report out;
    for (const SweepRow& row : rows)
        out.set("dim." + std::to_string(row.shells), row.dim);
    out.print();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact cohomology of weighted cell complexes and flat-end Euler formulas"};
    app.require_subcommand(1);

    std::string complex_path, sub_path, weights_path, cochain_path, fiber_path, rel_path;
    std::string out_prefix, kind_name, betti_list, mode_name, shells_list;
    std::string r0_text = "1", step_text = "1";
    std::vector<std::string> end_texts;
    std::size_t degree = 0, cap = 10000, res = 3, nu = 3, m = 0, shells = 1, dim_n = 2;
    std::int64_t chi_m = 0;
    bool default_unit = false, with_basis = false, book = false;

    CLI::App* validate_cmd = app.add_subcommand("validate", "check d∘d = 0");
    validate_cmd->add_option("complex", complex_path)->required();

    CLI::App* betti_cmd = app.add_subcommand("betti", "Betti numbers");
    betti_cmd->add_option("complex", complex_path)->required();

    CLI::App* euler_cmd = app.add_subcommand("euler", "Euler characteristic");
    euler_cmd->add_option("complex", complex_path)->required();

    CLI::App* harmonic_cmd = app.add_subcommand("harmonic", "harmonic cochain dimension");
    harmonic_cmd->add_option("complex", complex_path)->required();
    harmonic_cmd->add_option("--deg", degree)->required();
    harmonic_cmd->add_option("--weights", weights_path);
    harmonic_cmd->add_flag("--default-unit", default_unit);
    harmonic_cmd->add_option("--rel", rel_path);

    CLI::App* split_cmd = app.add_subcommand("hodge-split", "harmonic + exact + coexact parts");
    split_cmd->add_option("complex", complex_path)->required();
    split_cmd->add_option("--cochain", cochain_path)->required();
    split_cmd->add_option("--weights", weights_path);
    split_cmd->add_flag("--default-unit", default_unit);

    CLI::App* audit_cmd = app.add_subcommand("pair-audit", "long exact sequence audit");
    audit_cmd->add_option("complex", complex_path)->required();
    audit_cmd->add_option("--sub", sub_path)->required();

    CLI::App* imra_cmd = app.add_subcommand("im-rel-abs", "rank of relative -> absolute");
    imra_cmd->add_option("complex", complex_path)->required();
    imra_cmd->add_option("--sub", sub_path)->required();
    imra_cmd->add_option("--deg", degree)->required();
    imra_cmd->add_flag("--basis", with_basis);

    CLI::App* kerp_cmd = app.add_subcommand("ker-pullback", "cohomology vanishing on a fiber");
    kerp_cmd->add_option("complex", complex_path)->required();
    kerp_cmd->add_option("--fiber", fiber_path)->required();
    kerp_cmd->add_option("--deg", degree)->required();

    CLI::App* double_cmd = app.add_subcommand("double", "double along a subcomplex");
    double_cmd->add_option("complex", complex_path)->required();
    double_cmd->add_option("--sub", sub_path)->required();
    double_cmd->add_option("--out", out_prefix);

    CLI::App* closure_cmd = app.add_subcommand("group-closure", "close integer matrix generators");
    closure_cmd->add_option("group", sub_path)->required();
    closure_cmd->add_option("--cap", cap);

    CLI::App* eb_cmd = app.add_subcommand("equiv-betti", "invariant Betti numbers of the torus");
    eb_cmd->add_option("group", sub_path)->required();
    eb_cmd->add_option("--cap", cap);

    CLI::App* chieq_cmd = app.add_subcommand("chi-equivariant", "equivariant Euler characteristic");
    chieq_cmd->add_option("group", sub_path)->required();
    chieq_cmd->add_option("--cap", cap);

    CLI::App* qend_cmd = app.add_subcommand("q-end", "end contribution q(E)");
    qend_cmd->add_option("--end", end_texts)->required();
    qend_cmd->add_option("--cap", cap);

    CLI::App* chil2_cmd = app.add_subcommand("chi-l2", "L2 Euler characteristic from χ(M) and ends");
    chil2_cmd->add_option("--chi", chi_m)->required();
    chil2_cmd->add_option("--end", end_texts);
    chil2_cmd->add_option("--cap", cap);
    chil2_cmd->add_flag("--book", book);

    CLI::App* warped_cmd = app.add_subcommand("chi-l2-warped", "warped-product Euler formulas");
    warped_cmd->add_option("--chi", chi_m)->required();
    warped_cmd->add_option("--betti", betti_list)->required();
    warped_cmd->add_option("--case", mode_name)->required();
    warped_cmd->add_option("--n", dim_n)->required();

    CLI::App* model_cmd = app.add_subcommand("model", "emit a model complex");
    model_cmd->add_option("--kind", kind_name)->required();
    model_cmd->add_option("--res", res);
    model_cmd->add_option("--nu", nu);
    model_cmd->add_option("--m", m);
    model_cmd->add_option("--shells", shells);
    model_cmd->add_option("--out", out_prefix)->required();

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "truncation sweep of an end model");
    sweep_cmd->add_option("--nu", nu)->required();
    sweep_cmd->add_option("--m", m)->required();
    sweep_cmd->add_option("--deg", degree)->required();
    sweep_cmd->add_option("--shells", shells_list)->required();
    sweep_cmd->add_option("--res", res);
    sweep_cmd->add_option("--r0", r0_text);
    sweep_cmd->add_option("--step", step_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            std::cout << app.help();
            return 0;
        }
        std::cout << "error=CliParse" << "\n" << "why=" << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(validate_cmd))
            return cmd_validate(complex_path);
        if (app.got_subcommand(betti_cmd))
            return cmd_betti(complex_path);
        if (app.got_subcommand(euler_cmd))
            return cmd_euler(complex_path);
        if (app.got_subcommand(harmonic_cmd))
            return cmd_harmonic(complex_path, degree, weights_path, default_unit, rel_path);
        if (app.got_subcommand(split_cmd))
            return cmd_hodge_split(complex_path, cochain_path, weights_path, default_unit);
        if (app.got_subcommand(audit_cmd))
            return cmd_pair_audit(complex_path, sub_path);
        if (app.got_subcommand(imra_cmd))
            return cmd_im_rel_abs(complex_path, sub_path, degree, with_basis);
        if (app.got_subcommand(kerp_cmd))
            return cmd_ker_pullback(complex_path, fiber_path, degree);
        if (app.got_subcommand(double_cmd))
            return cmd_double(complex_path, sub_path, out_prefix);
        if (app.got_subcommand(closure_cmd))
            return cmd_group_closure(sub_path, cap);
        if (app.got_subcommand(eb_cmd))
            return cmd_equiv_betti(sub_path, cap);
        if (app.got_subcommand(chieq_cmd))
            return cmd_chi_equivariant(sub_path, cap);
        if (app.got_subcommand(qend_cmd))
            return cmd_q_end(end_texts.at(0), cap);
        if (app.got_subcommand(chil2_cmd))
            return cmd_chi_l2(chi_m, end_texts, cap, book);
        if (app.got_subcommand(warped_cmd))
            return cmd_chi_l2_warped(chi_m, betti_list, mode_name, dim_n);
        if (app.got_subcommand(model_cmd))
            return cmd_model(kind_name, res, nu, m, shells, out_prefix);
        if (app.got_subcommand(sweep_cmd))
            return cmd_sweep(nu, m, degree, shells_list, res, r0_text, step_text);
    } catch (const ParseError& e) {
        Report out;
        out.set("error", std::string("ParseError"));
        out.set("where", e.file() + ":" + std::to_string(e.line()));
        out.set("why", std::string(e.what()));
        out.print();
        return 2;
    } catch (const Error& e) {
        Report out;
        out.set("error", std::string(error_code_name(e.code())));
        out.set("why", std::string(e.what()));
        out.print();
        return 1;
    }
    return 0;
}
