#include <iostream>

#include <CLI11.hpp>

#include "holonet/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"holonet: distance and holonomy from typed directed edges"};
    app.require_subcommand(1);

    holonet::SubdivideOptions sub;
    CLI::App* c_sub = app.add_subcommand(
        "subdivide", "Quantize a weighted complex into a unit-edge network");
    c_sub->add_option("--input", sub.input, "weighted complex file")->required();
    c_sub->add_option("--output", sub.output, "network file to write")->required();
    c_sub->add_option("--epsilon", sub.epsilon, "observability scale")->required();
    c_sub->add_option("--unit", sub.unit, "unit edge length (default 2*epsilon)");
    c_sub->add_option("--rule", sub.rule, "floor|round (default floor)");
    c_sub->add_option("--zero", sub.zero, "clamp|error (default clamp)");
    c_sub->add_option("--mode", sub.mode, "dual|combined (default dual)");
    c_sub->add_option("--eps-prime", sub.eps_prime, "group block eps' (default 1)");

    holonet::LatticeOptions lat;
    CLI::App* c_lat = app.add_subcommand(
        "lattice", "Build a triangulated lattice and assign edge directions");
    c_lat->add_option("--rows", lat.rows, "grid rows")->required();
    c_lat->add_option("--cols", lat.cols, "grid cols")->required();
    c_lat->add_option("--spacing", lat.spacing, "embedding spacing (default 1)");
    c_lat->add_option("--mode", lat.mode, "dual|combined (default dual)");
    c_lat->add_option("--eps-prime", lat.eps_prime, "phase quantum (default 0.1)");
    double fx_val = 0, fy_val = 0, fd_val = 0;
    CLI::Option* o_fx = c_lat->add_option("--fx", fx_val, "horizontal forward fraction");
    CLI::Option* o_fy = c_lat->add_option("--fy", fy_val, "vertical forward fraction");
    CLI::Option* o_fd = c_lat->add_option("--fd", fd_val, "diagonal forward fraction");
    std::string ax_text, ay_text;
    CLI::Option* o_ax = c_lat->add_option("--Ax", ax_text, "connection A_x(x,y)");
    CLI::Option* o_ay = c_lat->add_option("--Ay", ay_text, "connection A_y(x,y)");
    c_lat->add_option("--output", lat.output, "network file to write")->required();

    holonet::HolonomyOptions hol;
    CLI::App* c_hol = app.add_subcommand(
        "holonomy", "Accumulate holonomy and length along a vertex path");
    c_hol->add_option("--input", hol.input, "network file")->required();
    c_hol->add_option("--path", hol.path, "comma-separated vertex ids")->required();
    c_hol->add_flag("--loop", hol.loop, "require a closed path");

    holonet::VerifyOptions ver;
    CLI::App* c_ver = app.add_subcommand(
        "verify", "Compare discrete loop phases against a continuum connection");
    c_ver->add_option("--input", ver.input, "network file")->required();
    c_ver->add_option("--Ax", ver.ax, "connection A_x(x,y)")->required();
    c_ver->add_option("--Ay", ver.ay, "connection A_y(x,y)")->required();
    c_ver->add_option("--loops", ver.loops_file, "file of closed vertex loops");
    c_ver->add_flag("--all-rects", ver.all_rects, "verify every grid rectangle");
    c_ver->add_flag("--even-sides", ver.even_sides, "with --all-rects: even side lengths only");
    c_ver->add_option("--tol", ver.tol, "circle-distance tolerance")->required();
    c_ver->add_option("--report", ver.report, "CSV report path")->required();

    holonet::GroupOptions grp;
    CLI::App* c_grp = app.add_subcommand(
        "group", "Generator-word approximation and mesh measurement");
    c_grp->add_option("--group-file", grp.group_file, "group block file")->required();
    std::string approx_text;
    CLI::Option* o_approx =
        c_grp->add_option("--approximate", approx_text, "target phase or row-major re/im matrix");
    c_grp->add_flag("--mesh", grp.mesh, "measure the covering radius");
    c_grp->add_option("--n", grp.n, "word norm bound")->required();
    c_grp->add_option("--samples", grp.samples, "mesh samples (default 100)");
    c_grp->add_option("--seed", grp.seed, "mesh sampling seed (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*o_fx) lat.fx = fx_val;
    if (*o_fy) lat.fy = fy_val;
    if (*o_fd) lat.fd = fd_val;
    if (*o_ax) lat.ax = ax_text;
    if (*o_ay) lat.ay = ay_text;
    if (*o_approx) grp.approximate = approx_text;

    if (c_sub->parsed()) return holonet::cmd_subdivide(sub, std::cout, std::cerr);
    if (c_lat->parsed()) return holonet::cmd_lattice(lat, std::cout, std::cerr);
    if (c_hol->parsed()) return holonet::cmd_holonomy(hol, std::cout, std::cerr);
    if (c_ver->parsed()) return holonet::cmd_verify(ver, std::cout, std::cerr);
    if (c_grp->parsed()) return holonet::cmd_group(grp, std::cout, std::cerr);
    return 2;
}
