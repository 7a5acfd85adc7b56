"""
配置管理模块，负责加载和管理数值计算配置
"""
import os
import copy
import json
from pathlib import Path
from typing import Any
from dotenv import load_dotenv

# 加载环境变量
load_dotenv()

# 项目根目录
ROOT_DIR = Path(__file__).parent.parent.parent

# 数据目录，可通过环境变量覆盖
DATA_DIR = Path(os.getenv("FPSTIELTJES_DATA_DIR", str(ROOT_DIR / "data")))

# 确保必要的目录存在
DATA_DIR.mkdir(parents=True, exist_ok=True)

# 默认配置
DEFAULT_CONFIG = {
    "series": {
        "rel_tol": 1e-16,          # 级数截断的相对容差
        "abs_tol": 0.0,
        "term_cap": 2000,          # 级数项数硬上限
        "consecutive": 3,          # 连续多少项满足容差才停止
        "budget_factor": 10,       # naive级数预估项数的放大倍数
        "shift_term_budget": 600,  # 平移展开内层求和的项数上限
        "shift_rel_tol": 1e-16,
        "cancellation_tol": 1e-8,  # 抵消造成的相对舍入损失上限
    },
    "quadrature": {
        "tol": 1e-12,
        "max_subdivisions": 4000,
    },
    "oracle": {
        "first_rung_fraction": 1.0 / 16.0,  # 第一级ε相对于min(c, 1)的比例
        "ratio": 0.5,
        "rungs": 8,
        "extrapolation_order": 3,
    },
    "asymptotics": {
        "zero_threshold": 1e-14,   # 判定Taylor系数为零的相对阈值
    },
    "bessel": {
        "k0_max_argument": 5.0,    # 超过该值时展开式抵消过于严重
    },
    "output": {
        "format": "text",
        "float_digits": 17,
    },
    "sweep": {
        "workers": 4,
    },
}


class Config:
    """配置管理类"""

    def __init__(self):
        self._config = copy.deepcopy(DEFAULT_CONFIG)
        self._config_file = DATA_DIR / "config.json"
        self._load_config()

    def _load_config(self):
        """从文件加载配置"""
        try:
            if self._config_file.exists():
                with open(self._config_file, "r", encoding="utf-8") as f:
                    loaded_config = json.load(f)
                    # 递归更新配置
                    self._update_dict(self._config, loaded_config)
        except Exception as e:
            # 日志模块依赖本模块，这里只能直接输出
            print(f"加载配置文件失败: {e}")

    def _update_dict(self, d: dict, u: dict) -> dict:
        """递归更新字典"""
        for k, v in u.items():
            if isinstance(v, dict) and k in d and isinstance(d[k], dict):
                self._update_dict(d[k], v)
            else:
                d[k] = v
        return d

    def get(self, key: str, default: Any = None) -> Any:
        """获取配置项"""
        keys = key.split(".")
        value = self._config
        try:
            for k in keys:
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default


# 全局配置实例
config = Config()
