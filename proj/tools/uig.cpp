// Command-line front end: generation, conversion, structure builds, queries,
// reconstruction, and the space/probe audit, over the documented file formats.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "uig/uig.hpp"

namespace {

std::ifstream open_in(const std::string& path, bool binary = true) {
    std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
    if (!f) throw uig::FormatError("cannot open input file: " + path);
    return f;
}

std::ofstream open_out(const std::string& path, bool binary = true) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw uig::FormatError("cannot open output file: " + path);
    return f;
}

void emit(const std::string& out_path, bool binary, const std::function<void(std::ostream&)>& write) {
    if (out_path.empty()) {
        write(std::cout);
    } else {
        auto f = open_out(out_path, binary);
        write(f);
    }
}

std::vector<uint64_t> parse_n_list(const std::string& s) {
    std::vector<uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoull(tok));
    }
    if (out.empty()) throw CLI::ValidationError("--n-list", "needs at least one value");
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"succinct interval-graph codecs (universal interval representation)"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "sample a uniform representation and write a UIR file");
    uint64_t gen_n = 0, gen_seed = 0;
    std::string gen_out;
    bool gen_binary = false;
    gen->add_option("--n", gen_n, "vertex count")->required();
    gen->add_option("--seed", gen_seed, "RNG seed")->required();
    gen->add_option("--out", gen_out, "output path (default stdout)");
    gen->add_flag("--binary", gen_binary, "write the binary UIR format");

    // convert
    auto* convert = app.add_subcommand("convert", "interval list -> universal representation");
    std::string conv_in, conv_out;
    bool conv_binary = false;
    convert->add_option("--in", conv_in, "interval list, one 'L R' pair per line")->required();
    convert->add_option("--out", conv_out, "output path (default stdout)");
    convert->add_flag("--binary", conv_binary, "write the binary UIR format");

    // build
    auto* build = app.add_subcommand("build", "encode a UIR file into a query structure");
    std::string build_kind, build_in, build_out;
    build->add_option("--kind", build_kind, "adj | deg | cellprobe")->required();
    build->add_option("--in", build_in, "UIR input (text or binary)")->required();
    build->add_option("--out", build_out, "structure output path")->required();

    // query
    auto* query = app.add_subcommand("query", "answer adj/deg queries from a structure file");
    std::string query_kind, query_in, query_type;
    std::vector<uint64_t> query_args;
    query->add_option("--kind", query_kind, "adj | deg | cellprobe (checked against the file)");
    query->add_option("--in", query_in, "structure file")->required();
    query->add_option("type", query_type, "adj | deg")->required();
    query->add_option("vertices", query_args, "i [j]")->expected(1, 2);

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "decode a structure back to a UIR file");
    std::string rec_kind, rec_in, rec_out;
    rec->add_option("--kind", rec_kind, "adj | deg (checked against the file)");
    rec->add_option("--in", rec_in, "structure file")->required();
    rec->add_option("--out", rec_out, "output path (default stdout)");

    // audit
    auto* audit = app.add_subcommand("audit", "space and probe measurements as CSV");
    std::string audit_kind, audit_nlist, audit_out;
    uint64_t audit_seed = 1, audit_queries = 10000;
    audit->add_option("--kind", audit_kind, "adj | deg | cellprobe")->required();
    audit->add_option("--n-list", audit_nlist, "comma-separated vertex counts")->required();
    audit->add_option("--seed", audit_seed, "RNG seed (default 1)");
    audit->add_option("--queries", audit_queries, "query samples per row (default 10000)");
    audit->add_option("--out", audit_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        uig::UniversalRep rep = uig::sample_uniform(gen_n, gen_seed);
        emit(gen_out, gen_binary, [&](std::ostream& os) {
            gen_binary ? uig::write_uir_binary(rep, os) : uig::write_uir_text(rep, os);
        });
        return 0;
    }

    if (convert->parsed()) {
        auto f = open_in(conv_in, false);
        auto raw = uig::read_interval_list(f);
        uig::UniversalRep rep = uig::classic_to_universal(uig::normalize_to_classic(raw));
        emit(conv_out, conv_binary, [&](std::ostream& os) {
            conv_binary ? uig::write_uir_binary(rep, os) : uig::write_uir_text(rep, os);
        });
        return 0;
    }

    if (build->parsed()) {
        auto in = open_in(build_in);
        uig::UniversalRep rep = uig::read_uir_any(in);
        auto out = open_out(build_out);
        switch (uig::kind_from_name(build_kind)) {
            case uig::StructureKind::Adj: uig::save_adj(uig::build_adj(rep), out); break;
            case uig::StructureKind::Deg: uig::save_deg(uig::build_deg(rep), out); break;
            case uig::StructureKind::CellProbe: uig::save_cellprobe(uig::build_cellprobe(rep), out); break;
        }
        return 0;
    }

    if (query->parsed()) {
        auto in = open_in(query_in);
        std::string magic = uig::sniff_magic(in);
        if (!query_kind.empty()) {
            std::string expect = query_kind == "adj"         ? "ADJ1"
                                 : query_kind == "deg"       ? "DEG1"
                                 : query_kind == "cellprobe" ? "CPA1"
                                                             : "";
            if (expect.empty()) throw uig::FormatError("unknown --kind: " + query_kind);
            if (expect != magic) throw uig::FormatError("--kind " + query_kind + " does not match file magic " + magic);
        }
        if (query_type == "adj") {
            if (query_args.size() != 2) throw uig::FormatError("adj query needs two vertices");
            bool ans;
            if (magic == "ADJ1") ans = uig::load_adj(in).adj(query_args[0], query_args[1]);
            else if (magic == "CPA1") ans = uig::load_cellprobe(in).adj(query_args[0], query_args[1]);
            else throw uig::FormatError("file with magic " + magic + " does not answer adj queries");
            std::cout << (ans ? "true" : "false") << "\n";
        } else if (query_type == "deg") {
            if (query_args.size() != 1) throw uig::FormatError("deg query needs one vertex");
            if (magic != "DEG1") throw uig::FormatError("file with magic " + magic + " does not answer deg queries");
            std::cout << uig::load_deg(in).deg(query_args[0]) << "\n";
        } else {
            throw uig::FormatError("unknown query type: " + query_type);
        }
        return 0;
    }

    if (rec->parsed()) {
        auto in = open_in(rec_in);
        std::string magic = uig::sniff_magic(in);
        if (!rec_kind.empty()) {
            std::string expect = rec_kind == "adj" ? "ADJ1" : rec_kind == "deg" ? "DEG1" : "";
            if (expect.empty()) throw uig::FormatError("reconstruct supports --kind adj|deg");
            if (expect != magic) throw uig::FormatError("--kind " + rec_kind + " does not match file magic " + magic);
        }
        uig::UniversalRep rep;
        if (magic == "ADJ1") rep = uig::load_adj(in).reconstruct();
        else if (magic == "DEG1") rep = uig::deg_reconstruct(uig::load_deg(in));
        else throw uig::FormatError("reconstruct needs an ADJ1 or DEG1 file, got " + magic);
        emit(rec_out, false, [&](std::ostream& os) { uig::write_uir_text(rep, os); });
        return 0;
    }

    if (audit->parsed()) {
        auto rows = uig::redundancy_curve(uig::kind_from_name(audit_kind), parse_n_list(audit_nlist),
                                          audit_seed, audit_queries);
        emit(audit_out, false, [&](std::ostream& os) {
            os << uig::audit_csv_header() << "\n";
            for (const auto& r : rows) os << uig::audit_csv_row(r) << "\n";
        });
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
