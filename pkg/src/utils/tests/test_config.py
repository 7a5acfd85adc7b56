"""
配置读取的测试
"""
import json
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from src.utils import config as config_module
from src.utils.config import DEFAULT_CONFIG, Config, config


class TestConfig(unittest.TestCase):
    """Config 的点号读取与文件覆盖"""

    def test_dotted_get(self):
        """点号路径读取默认值，缺失键返回给定缺省"""
        self.assertEqual(config.get("series.cancellation_tol"), DEFAULT_CONFIG["series"]["cancellation_tol"])
        self.assertIsNone(config.get("series.no_such_key"))
        self.assertEqual(config.get("no.such.key", 7), 7)
        self.assertEqual(config.get("series.rel_tol.deeper", "x"), "x")

    def test_file_overrides_merge(self):
        """配置文件只覆盖给出的键，其余保留默认"""
        with tempfile.TemporaryDirectory() as tmp:
            Path(tmp, "config.json").write_text(
                json.dumps({"series": {"cancellation_tol": 1e-6}, "sweep": {"workers": 2}}), encoding="utf-8"
            )
            with mock.patch.object(config_module, "DATA_DIR", Path(tmp)):
                loaded = Config()
        self.assertEqual(loaded.get("series.cancellation_tol"), 1e-6)
        self.assertEqual(loaded.get("sweep.workers"), 2)
        self.assertEqual(loaded.get("series.term_cap"), DEFAULT_CONFIG["series"]["term_cap"])
        self.assertEqual(DEFAULT_CONFIG["series"]["cancellation_tol"], 1e-8)


if __name__ == "__main__":
    unittest.main()
