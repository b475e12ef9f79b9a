"""Command-line client for the verification service.

By default the service runs in-process; --server targets a remote
instance.  Exit codes: 0 all checks passed, 1 a check failed, 2 usage or
validation error.
"""

import os

# GCS_THREADS caps the BLAS/OpenMP pools; must happen before numpy loads
_threads = os.environ.get("GCS_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                 "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(_var, _threads)

import csv
import json
import sys

import click


def _client(server):
    if server:
        import httpx
        return httpx.Client(base_url=server)
    import warnings
    with warnings.catch_warnings():
        # the test-client shim warns about its own dependencies at import
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app
    return TestClient(app)


def _dumps(payload) -> str:
    # stable key order; floats use Python's shortest exact representation
    return json.dumps(payload, sort_keys=True)


def _post(server, path, payload):
    with _client(server) as client:
        resp = client.post(path, json=payload)
    if resp.status_code in (400, 422):
        click.echo(f"error: {resp.json().get('detail')}", err=True)
        sys.exit(2)
    if resp.status_code != 200:
        click.echo(f"error: service returned {resp.status_code}", err=True)
        sys.exit(2)
    return resp.json()


def _emit_report(report: dict, as_json: bool) -> None:
    if as_json:
        click.echo(_dumps(report))
        return
    click.echo(f"command: {report['command']}  "
               f"({report['runtime_ms']:.1f} ms)")
    click.echo(f"parameters: {_dumps(report['parameters'])}")
    header = f"{'check':<28}{'value':>14}{'expected':>14}{'tol':>10}  pass"
    click.echo(header)
    for c in report["checks"]:
        click.echo(f"{c['name']:<28}{c['value']:>14.6g}"
                   f"{c['expected']:>14.6g}{c['tolerance']:>10.1e}"
                   f"  {'yes' if c['pass'] else 'NO'}")
    if report.get("extra"):
        click.echo(f"extra: {_dumps(report['extra'])}")


def _finish(report: dict) -> None:
    sys.exit(0 if all(c["pass"] for c in report["checks"]) else 1)


common = [
    click.option("--json", "as_json", is_flag=True,
                 help="emit the JSON report instead of a table"),
    click.option("--server", default=None,
                 help="base URL of a remote service (default: in-process)"),
    click.option("--tol", type=float, default=None,
                 help="override the default check tolerance"),
]


def _add_common(cmd):
    for opt in reversed(common):
        cmd = opt(cmd)
    return cmd


@click.group()
def main():
    """Coherent-state verification toolkit."""


@main.command()
@click.argument("group", type=click.Choice(["weyl", "su2", "su11"]))
@click.option("--j", type=float, default=None)
@click.option("--mu", type=float, default=None)
@click.option("--k", type=float, default=None)
@click.option("--cutoff", type=int, default=64)
@click.option("--probe-dim", type=int, default=None)
@click.option("--n-theta", type=int, default=None)
@click.option("--n-phi", type=int, default=None)
@click.option("--n-r", type=int, default=None)
@click.option("--radius", type=float, default=None)
@click.option("--eps", type=float, default=None)
@_add_common
def verify(group, j, mu, k, cutoff, probe_dim, n_theta, n_phi, n_r,
           radius, eps, as_json, server, tol):
    """Run the d-constant and resolution-of-identity checks."""
    payload = {
        "group": group, "j": j, "mu": mu, "k": k, "cutoff": cutoff,
        "probe_dim": probe_dim, "tol": tol,
        "grid": {"n_theta": n_theta, "n_phi": n_phi, "n_r": n_r,
                 "radius": radius, "eps": eps},
    }
    report = _post(server, "/verify", payload)
    _emit_report(report, as_json)
    _finish(report)


@main.command()
@click.option("--j", type=float, required=True)
@click.option("--mu", type=float, default=None)
@click.option("--theta0", type=float, default=2.0)
@click.option("--phi0", type=float, default=0.5)
@click.option("--field", "field_spec", default='{"type": "rotating"}',
              help="field spec JSON")
@click.option("--t-end", type=float, default=10.0)
@click.option("--dt", type=float, default=1e-3)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write the trajectory CSV here")
@_add_common
def dynamics(j, mu, theta0, phi0, field_spec, t_end, dt, out, as_json,
             server, tol):
    """Simulate spin dynamics and check coherence is preserved."""
    try:
        field = json.loads(field_spec)
    except json.JSONDecodeError as exc:
        click.echo(f"error: bad field spec: {exc}", err=True)
        sys.exit(2)
    payload = {"j": j, "mu": mu, "theta0": theta0, "phi0": phi0,
               "field": field, "t_end": t_end, "dt": dt, "tol": tol,
               "include_trajectory": out is not None}
    data = _post(server, "/dynamics", payload)
    if out is not None:
        _write_trajectory_csv(out, data["trajectory"])
    _emit_report(data["report"], as_json)
    _finish(data["report"])


def _write_trajectory_csv(path, trajectory):
    dim = len(trajectory["states_re"][0])
    header = (["t"]
              + [f"re_psi_{i}" for i in range(dim)]
              + [f"im_psi_{i}" for i in range(dim)]
              + ["n1", "n2", "n3", "fidelity"])
    with open(path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        rows = zip(trajectory["times"], trajectory["states_re"],
                   trajectory["states_im"], trajectory["classical"],
                   trajectory["fidelity"])
        for t, re_s, im_s, n, fid in rows:
            writer.writerow([repr(t)] + [repr(v) for v in re_s]
                            + [repr(v) for v in im_s]
                            + [repr(v) for v in n] + [repr(fid)])


@main.command()
@click.argument("group", type=click.Choice(["weyl", "su2", "su11"]))
@click.option("--spec", "spec_path", type=click.Path(exists=False),
              default=None, help="lattice/point spec JSON file (or '-')")
@click.option("--probe-dim", type=int, default=6)
@click.option("--index-range", type=int, default=6)
@click.option("--cutoff", type=int, default=64)
@click.option("--j", type=float, default=None)
@click.option("--mu", type=float, default=None)
@click.option("--k", type=float, default=None)
@_add_common
def lattice(group, spec_path, probe_dim, index_range, cutoff, j, mu, k,
            as_json, server, tol):
    """Analyze a lattice subsystem: admissibility (weyl) and frame bounds.

    The spec file holds {"n_modes", "periods", "epsilon"} for weyl, or
    {"points": [[a, b], ...]} for su2/su11.
    """
    if spec_path is None:
        click.echo("error: --spec is required", err=True)
        sys.exit(2)
    try:
        if spec_path == "-":
            spec = json.load(sys.stdin)
        else:
            with open(spec_path) as fh:
                spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: cannot read spec: {exc}", err=True)
        sys.exit(2)
    payload = {"group": group, "probe_dim": probe_dim,
               "index_range": index_range, "cutoff": cutoff,
               "j": j, "mu": mu, "k": k}
    if tol is not None:
        payload["tol"] = tol
    if group == "weyl":
        payload["lattice"] = spec
    else:
        payload["points"] = spec.get("points")
    report = _post(server, "/lattice", payload)
    _emit_report(report, as_json)
    _finish(report)


@main.command()
@click.argument("group", type=click.Choice(["weyl", "su2", "su11"]))
@click.option("--j", type=float, default=None)
@click.option("--mu", type=float, default=None)
@click.option("--k", type=float, default=None)
@click.option("--cutoff", type=int, default=64)
@click.option("--x1", nargs=2, type=float, required=True,
              help="first point: theta phi (su2) or re im (weyl/su11)")
@click.option("--x2", nargs=2, type=float, required=True)
@_add_common
def overlap(group, j, mu, k, cutoff, x1, x2, as_json, server, tol):
    """Evaluate a coherent-state overlap and check its closed form."""
    payload = {"group": group, "j": j, "mu": mu, "k": k, "cutoff": cutoff,
               "x1": list(x1), "x2": list(x2), "tol": tol}
    data = _post(server, "/overlap", payload)
    if not as_json:
        click.echo(f"overlap = {data['overlap_re']!r} "
                   f"+ {data['overlap_im']!r} i")
    report = data["report"]
    if as_json:
        report = dict(report)
        report["overlap_re"] = data["overlap_re"]
        report["overlap_im"] = data["overlap_im"]
    _emit_report(report, as_json)
    _finish(data["report"])


@main.command()
@click.option("--j", type=float, required=True)
@click.option("--mu", type=float, default=None)
@click.option("--seed", type=int, default=0)
@_add_common
def pq(j, mu, seed, as_json, server, tol):
    """P-representation round trip on a random density matrix."""
    payload = {"j": j, "mu": mu, "seed": seed, "tol": tol}
    report = _post(server, "/pq", payload)
    _emit_report(report, as_json)
    _finish(report)


if __name__ == "__main__":
    main()
