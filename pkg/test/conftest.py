"""
pytest 公共配置
"""

import os
import sys

import pytest

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)


def pytest_collection_modifyitems(config, items):
    """未设置 RISFD_RUN_SLOW=1 时跳过 slow 用例"""
    if os.environ.get("RISFD_RUN_SLOW", "").strip().lower() in ("1", "true", "yes"):
        return
    skip_slow = pytest.mark.skip(reason="设置 RISFD_RUN_SLOW=1 以运行缩小规模的统计复现")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
