"""
命令行入口
用法：
    python -m app.cli clifford build --n 2 --sig 1,3
    python -m app.cli spinor check-pure --n 4 --random
    python -m app.cli fock solve --levels 3 --grid 24,24,48
    python -m app.cli selftest --quick
"""

import functools
import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import click
from pydantic import ValidationError

from . import __version__
from .config import settings
from .exceptions import SpinorLabError
from .schemas import SCHEMAS, schema_text
from .schemas.common import RunConfig
from .services.dispatch_service import dispatch
from .utils.logging_config import setup_logging
from .utils.output import render
from .utils.tolerances import TOLERANCE_NAMES

SEED_RANGE = click.IntRange(0, 2 ** 64 - 1)
SIGN = click.Choice(["1", "-1"])
CHIRALITY = click.Choice(["plus", "minus"])


def common_options(func):
    """每个叶子命令共用的输出、种子与容差选项"""
    options = [
        click.option("--json", "as_json", is_flag=True, default=False, help="JSON 输出"),
        click.option("--csv", "as_csv", is_flag=True, default=False, help="CSV 输出"),
        click.option("--text", "as_text", is_flag=True, default=False, help="表格输出"),
        click.option("--seed", type=SEED_RANGE, default=None, help="随机种子"),
        click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="写入文件而不是标准输出"),
        click.option("--timing", is_flag=True, default=False, help="在结果中包含计时"),
        click.option("--constants", "constants_file", type=click.Path(dir_okay=False), default=None,
                     help="参考常数 JSON 文件"),
        click.option("--tol-identity", type=float, default=None),
        click.option("--tol-null", type=float, default=None),
        click.option("--tol-reject", type=float, default=None),
        click.option("--tol-rank", type=float, default=None),
        click.option("--tol-convergence", type=float, default=None),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def spinor_selection(func):
    options = [
        click.option("--components", default=None, help="逗号分隔的复数分量，如 1,0,0,1j"),
        click.option("--basis", type=int, default=None, help="第 K 个基向量"),
        click.option("--random", "random_", is_flag=True, default=False, help="随机手征旋量"),
        click.option("--random-pure", is_flag=True, default=False, help="随机纯旋量"),
        click.option("--chirality", type=CHIRALITY, default=None),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _selection(kwargs: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "components": kwargs.pop("components"),
        "basis": kwargs.pop("basis"),
        "random": kwargs.pop("random_") or None,
        "random_pure": kwargs.pop("random_pure") or None,
        "chirality": kwargs.pop("chirality"),
    }


def execute(command: str, params: Dict[str, Any], options: Dict[str, Any]) -> None:
    """构造 RunConfig，分发并输出；异常映射为退出码"""
    chosen = [fmt for fmt in ("json", "csv", "text") if options.get(f"as_{fmt}")]
    if len(chosen) > 1:
        raise click.UsageError("--json、--csv 与 --text 只能选一个")
    fmt = chosen[0] if chosen else settings.output_format
    try:
        config = RunConfig(
            command=command,
            params={k: v for k, v in params.items() if v is not None},
            tolerances={name: options.get(name) for name in TOLERANCE_NAMES},
            output_format=fmt,
            seed=options.get("seed") if options.get("seed") is not None else settings.default_seed,
            constants_file=options.get("constants_file"),
            timing=bool(options.get("timing")),
        )
    except ValidationError as e:
        click.echo(json.dumps({"code": "invalid-argument", "detail": str(e), "diagnostics": {}},
                              ensure_ascii=False), err=True)
        sys.exit(2)

    try:
        envelope = dispatch(config)
    except SpinorLabError as e:
        click.echo(json.dumps(e.to_dict(), ensure_ascii=False, default=str), err=True)
        sys.exit(e.exit_code)

    text = render(envelope.model_dump(), fmt)
    out = options.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)

    if envelope.status == "failed":
        sys.exit(3)


def leaf(command: str):
    """把叶子命令的 kwargs 拆成命令参数与公共选项"""
    common = ("as_json", "as_csv", "as_text", "seed", "out", "timing", "constants_file",
              *TOLERANCE_NAMES)

    def decorator(func):
        @functools.wraps(func)
        def wrapper(**kwargs):
            options = {name: kwargs.pop(name) for name in common}
            params = func(**kwargs)
            execute(command, params, options)
        return wrapper
    return decorator


@click.group()
@click.version_option(__version__, prog_name="spinorlab")
@click.option("--log-level", default=None, help="覆盖 LOG_LEVEL")
def spinorlab(log_level: Optional[str]):
    """纯旋量几何与动量空间谱的计算实验室"""
    if log_level:
        settings.log_level = log_level
    setup_logging(settings, force=bool(log_level))


# ---------------------------------------------------------------- clifford

@spinorlab.group()
def clifford():
    """Clifford 代数表示"""


@clifford.command("build")
@click.option("--n", type=int, required=True)
@click.option("--sig", default=None, help="签名 P,Q")
@common_options
@leaf("clifford.build")
def clifford_build(n, sig):
    return {"n": n, "sig": sig}


@clifford.command("check")
@click.option("--n", type=int, required=True)
@click.option("--sig", default=None)
@common_options
@leaf("clifford.check")
def clifford_check(n, sig):
    return {"n": n, "sig": sig}


# ---------------------------------------------------------------- spinor

@spinorlab.group()
def spinor():
    """旋量双线性与纯性"""


@spinor.command("vector")
@click.option("--n", type=int, required=True)
@click.option("--sig", default=None)
@click.option("--phi", default=None)
@click.option("--psi", default=None)
@click.option("--random", "random_", is_flag=True, default=False, help="随机 φ 与随机纯旋量 ψ")
@click.option("--sign", type=SIGN, default="1", help="B 的符号约定")
@common_options
@leaf("spinor.vector")
def spinor_vector(n, sig, phi, psi, random_, sign):
    return {"n": n, "sig": sig, "phi": phi, "psi": psi, "random": random_ or None, "sign": int(sign)}


@spinor.command("decompose")
@click.option("--n", type=int, required=True)
@click.option("--sig", default=None)
@click.option("--phi", default=None)
@click.option("--psi", default=None)
@click.option("--random", "random_", is_flag=True, default=False, help="随机 φ 与随机纯旋量 ψ")
@click.option("--sign", type=SIGN, default="1", help="B 的符号约定")
@common_options
@leaf("spinor.decompose")
def spinor_decompose(n, sig, phi, psi, random_, sign):
    """φ⊗Bψ 的 Clifford 阶数分解与纯旋量零化检验"""
    return {"n": n, "sig": sig, "phi": phi, "psi": psi, "random": random_ or None, "sign": int(sign)}


@spinor.command("check-pure")
@click.option("--n", type=int, required=True)
@click.option("--sig", default=None)
@spinor_selection
@common_options
@leaf("spinor.check-pure")
def spinor_check_pure(n, sig, **kwargs):
    return {"n": n, "sig": sig, **_selection(kwargs)}


@spinor.command("codim")
@click.option("--n", type=int, required=True)
@click.option("--sig", default=None)
@click.option("--samples", type=int, default=20)
@common_options
@leaf("spinor.codim")
def spinor_codim(n, sig, samples):
    return {"n": n, "sig": sig, "samples": samples}


@spinor.command("null-plane")
@click.option("--n", type=int, required=True)
@click.option("--sig", default=None)
@spinor_selection
@common_options
@leaf("spinor.null-plane")
def spinor_null_plane(n, sig, **kwargs):
    return {"n": n, "sig": sig, **_selection(kwargs)}


@spinor.command("real-null")
@click.option("--n", type=int, required=True)
@click.option("--sig", default=None, help="默认 1,2n-1")
@spinor_selection
@common_options
@leaf("spinor.real-null")
def spinor_real_null(n, sig, **kwargs):
    return {"n": n, "sig": sig, **_selection(kwargs)}


# ---------------------------------------------------------------- fields

@spinorlab.group()
def fields():
    """动量空间零向量与无质量场方程"""


@fields.command("pauli")
@click.option("--phi", required=True)
@common_options
@leaf("fields.pauli")
def fields_pauli(phi):
    return {"phi": phi}


@fields.command("decompose")
@click.option("--phi", required=True)
@click.option("--psi", required=True)
@common_options
@leaf("fields.decompose")
def fields_decompose(phi, psi):
    return {"phi": phi, "psi": psi}


@fields.command("kernel")
@click.option("--p", required=True, help="p0,p1,p2,p3")
@click.option("--chirality", type=CHIRALITY, default="plus")
@common_options
@leaf("fields.kernel")
def fields_kernel(p, chirality):
    return {"p": p, "chirality": chirality}


@fields.command("maxwell")
@click.option("--p", required=True, help="p0,p1,p2,p3")
@click.option("--random-spinor", is_flag=True, default=False)
@common_options
@leaf("fields.maxwell")
def fields_maxwell(p, random_spinor):
    return {"p": p, "random_spinor": random_spinor or None}


@fields.command("mass-sphere")
@click.option("--p", required=True, help="v1,...,v2n+2")
@click.option("--orientation", type=SIGN, default="1")
@common_options
@leaf("fields.mass-sphere")
def fields_mass_sphere(p, orientation):
    return {"p": p, "orientation": int(orientation)}


# ---------------------------------------------------------------- fock

@spinorlab.group()
def fock():
    """S³ 上的 Fock 方程与氢原子能级"""


@fock.command("solve")
@click.option("--levels", type=int, default=3)
@click.option("--grid", default="16,16,32", help="o1,o2,o3")
@click.option("--reg", default=None, help="puncture | subtract | mollify:EPS")
@click.option("--alpha", default="measured", help="measured | wyler | 数值")
@click.option("--mc2", type=float, default=None, help="静能，缺省为电子静能（eV）")
@click.option("--cluster-tol", type=float, default=None)
@click.option("--method", type=click.Choice(["auto", "circulant", "dense"]), default="auto")
@common_options
@leaf("fock.solve")
def fock_solve(levels, grid, reg, alpha, mc2, cluster_tol, method):
    return {"levels": levels, "grid": grid, "reg": reg, "alpha": alpha, "mc2": mc2,
            "cluster_tol": cluster_tol, "method": method}


@fock.command("funk-hecke")
@click.option("--levels", type=int, default=6)
@click.option("--quad-order", type=int, default=32)
@common_options
@leaf("fock.funk-hecke")
def fock_funk_hecke(levels, quad_order):
    return {"levels": levels, "quad_order": quad_order}


@fock.command("levels")
@click.option("--levels", type=int, default=4)
@click.option("--alpha", default="measured")
@click.option("--mc2", type=float, default=None)
@common_options
@leaf("fock.levels")
def fock_levels(levels, alpha, mc2):
    return {"levels": levels, "alpha": alpha, "mc2": mc2}


@fock.command("residual")
@click.option("--lambda", "lam", type=float, required=True)
@click.option("--alpha", type=float, required=True)
@click.option("--mc-over-p0", type=float, required=True)
@common_options
@leaf("fock.residual")
def fock_residual(lam, alpha, mc_over_p0):
    return {"lambda": lam, "alpha": alpha, "mc_over_p0": mc_over_p0}


# ---------------------------------------------------------------- const

@spinorlab.group()
def const():
    """几何常数与时间单位"""


@const.command("wyler")
@common_options
@leaf("const.wyler")
def const_wyler():
    return {}


@const.command("dirac")
@click.option("--mass-ev", type=float, default=None, help="静能（eV），缺省为质子")
@click.option("--h", type=float, default=None)
@common_options
@leaf("const.dirac")
def const_dirac(mass_ev, h):
    return {"mass_ev": mass_ev, "h": h}


@const.command("torus")
@click.option("--n", type=int, required=True)
@click.option("--t", type=float, required=True)
@click.option("--h", type=float, default=None)
@common_options
@leaf("const.torus")
def const_torus(n, t, h):
    return {"n": n, "t": t, "h": h}


@const.command("ratio")
@click.option("--age", type=float, default=None)
@click.option("--dt", type=float, default=None)
@click.option("--mass-ev", type=float, default=None)
@common_options
@leaf("const.ratio")
def const_ratio(age, dt, mass_ev):
    return {"age": age, "dt": dt, "mass_ev": mass_ev}


# ---------------------------------------------------------------- misc

@spinorlab.command("selftest")
@click.option("--quick", is_flag=True, default=False)
@common_options
@leaf("selftest")
def selftest(quick):
    return {"quick": quick}


@spinorlab.command("schema")
@click.argument("name", type=click.Choice(sorted(SCHEMAS)), required=False)
@click.option("--out-dir", type=click.Path(file_okay=False), default=None, help="导出全部 schema 到目录")
def schema(name, out_dir):
    """打印 JSON schema，或用 --out-dir 重新生成仓库内的 schema 文件"""
    if out_dir is None:
        if name is None:
            raise click.UsageError("需要 schema 名称或 --out-dir")
        click.echo(schema_text(name), nl=False)
        return
    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    names = [name] if name else sorted(SCHEMAS)
    for key in names:
        (target / f"{key}.json").write_text(schema_text(key), encoding="utf-8")
    click.echo(f"已写出 {len(names)} 个 schema 到 {target}", err=True)


def main():
    spinorlab()


if __name__ == "__main__":
    main()
