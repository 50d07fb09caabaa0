import json
import logging
import os
import shutil
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from ..curve import CurveLike, initial_curve
from ..exceptions import HadamardFlowError, ScenarioError
from ..persistence.storage import read_table
from ..surface import SurfaceProfile, build_constant_curvature, build_from_curvature, build_tabulated
from ..utils.output import OutputFormatter
from .schema import ConstantSurface, PinchedSurface, Scenario, SurfaceBlock, TabulatedSurface

logger = logging.getLogger(__name__)

DEFAULT_SETTINGS_PATH = "~/.hadamard-flow/settings.json"
TABLE_COLUMNS = ("r", "phi", "dphi", "ddphi")


def load_settings(config_path: str = DEFAULT_SETTINGS_PATH) -> dict:
    """加载进程级配置，如果不存在则从模板创建"""
    resolved_config_path = Path(config_path).expanduser()

    # 如果配置文件不存在，从模板创建
    if not resolved_config_path.exists():
        try:
            resolved_config_path.parent.mkdir(parents=True, exist_ok=True)
            template_path = Path(__file__).parent.parent.parent / "templates" / "settings.json"
            if template_path.exists():
                shutil.copy(template_path, resolved_config_path)
                OutputFormatter.debug(f"Settings file created at: {resolved_config_path}")
            else:
                OutputFormatter.warning(f"Settings template not found at: {template_path}")
        except OSError as e:
            OutputFormatter.warning(f"Failed to create settings file: {e}")

    settings: Dict[str, Any] = {}
    # 1. 先加载主配置文件
    if resolved_config_path.exists():
        try:
            with open(resolved_config_path, 'r', encoding='utf-8') as f:
                settings = json.load(f)
        except json.JSONDecodeError as e:
            raise ScenarioError(f"settings file {resolved_config_path} is not valid JSON: {e}") from e

    # 2. 如果存在 .env 文件，加载环境变量
    env_file = Path(".env")
    if env_file.exists():
        load_dotenv(dotenv_path=env_file)

    # 3. 环境变量覆盖
    settings = _resolve_env_vars(settings)
    logging_config = settings.setdefault("logging", {})
    logging_config["log_dir"] = os.environ.get("HF_LOG_DIR") or logging_config.get(
        "log_dir", "~/.hadamard-flow/logs")
    if os.environ.get("HF_LOG_ENABLED"):
        logging_config["enabled"] = _parse_flag(os.environ["HF_LOG_ENABLED"])
    else:
        logging_config["enabled"] = bool(logging_config.get("enabled", True))
    settings["threads"] = _parse_threads(os.environ.get("HF_THREADS") or settings.get("threads", 1))

    OutputFormatter.debug(f"Loaded settings: {json.dumps(settings)}")
    return settings


def _parse_flag(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


def _parse_threads(value: Any) -> int:
    try:
        threads = int(value)
    except (TypeError, ValueError):
        raise ScenarioError(f"HF_THREADS must be a positive integer, got {value!r}")
    if threads < 1:
        raise ScenarioError(f"HF_THREADS must be a positive integer, got {value!r}")
    return threads


def _resolve_env_vars(obj):
    """递归替换环境变量"""
    if isinstance(obj, str):
        if obj.startswith("${") and obj.endswith("}"):
            var_name = obj[2:-1]
            return os.getenv(var_name, obj)
        return obj
    elif isinstance(obj, dict):
        return {k: _resolve_env_vars(v) for k, v in obj.items()}
    elif isinstance(obj, list):
        return [_resolve_env_vars(item) for item in obj]
    else:
        return obj


# ========== 场景文件 ==========

def load_scenario(path) -> Scenario:
    """Parse and validate a scenario file; any problem is a ScenarioError"""
    path = Path(path).expanduser()
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ScenarioError(f"scenario file {path} does not exist")
    except json.JSONDecodeError as e:
        raise ScenarioError(f"scenario file {path} is not valid JSON: {e}") from e
    except OSError as e:
        raise ScenarioError(f"cannot read scenario file {path}: {e}") from e
    return parse_scenario(data, source=str(path))


def parse_scenario(data: Any, source: str = "<scenario>") -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError(f"{source}: a scenario must be a JSON object")
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ScenarioError(f"{source}: {where}: {first['msg']} ({e.error_count()} error(s))") from e


def build_surface(block: SurfaceBlock, base_dir: Optional[Path] = None) -> SurfaceProfile:
    """SurfaceProfile for a scenario surface block"""
    try:
        if isinstance(block, ConstantSurface):
            return build_constant_curvature(block.a, block.r_max, block.grid_step)
        if isinstance(block, PinchedSurface):
            return build_from_curvature(block.family, block.a, block.b, block.c, block.r_max, block.grid_step)
        if isinstance(block, TabulatedSurface):
            table_path = Path(block.table_path).expanduser()
            if not table_path.is_absolute() and base_dir is not None:
                table_path = base_dir / table_path
            if not table_path.exists():
                raise ScenarioError(f"surface table {table_path} does not exist")
            table = read_table(table_path, TABLE_COLUMNS)
            return build_tabulated(*(table[c] for c in TABLE_COLUMNS), a=block.a, b=block.b)
    except ScenarioError:
        raise
    except HadamardFlowError as e:
        raise ScenarioError(f"invalid surface: {e}") from e
    raise ScenarioError(f"unsupported surface block {type(block).__name__}")


def build_initial(scenario: Scenario, surface: SurfaceProfile) -> CurveLike:
    """Initial curve of a run scenario"""
    if scenario.initial is None:
        raise ScenarioError("scenario has no 'initial' block")
    kind, params, samples = scenario.initial_params()
    try:
        return initial_curve(surface, kind, params, samples)
    except HadamardFlowError as e:
        raise ScenarioError(f"invalid initial curve: {e}") from e
