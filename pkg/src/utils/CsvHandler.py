import csv
import logging
import typing
from dataclasses import fields, is_dataclass
from pathlib import Path
from typing import Any, Iterable, TypeVar

import pandas as pd

logger = logging.getLogger(__name__)

T = TypeVar("T")


class CsvHandler:
    @staticmethod
    def check_csv(csv_path: str | Path, expected_columns: list[str], fill_value: Any = "") -> bool:
        """
        确保 CSV 文件存在且包含所有期望的列。

        - 文件不存在: 创建并写入表头
        - 缺少列: 用 fill_value 补齐 (保留已有的额外列)

        Returns:
            bool: 操作是否成功
        """
        path = Path(csv_path)
        path.parent.mkdir(parents=True, exist_ok=True)

        if not path.exists():
            with open(path, mode="w", newline="", encoding="utf-8") as file:
                csv.writer(file).writerow(expected_columns)
            return True

        try:
            df = pd.read_csv(path, low_memory=False)
            existing_columns = df.columns.tolist()
            missing_columns = [col for col in expected_columns if col not in existing_columns]

            if missing_columns:
                logger.warning(f"CSV {csv_path} is missing columns {missing_columns}, adding them")
                for col in missing_columns:
                    df[col] = fill_value.get(col, "") if isinstance(fill_value, dict) else fill_value

                ordered = [col for col in expected_columns if col in df.columns]
                ordered += [col for col in existing_columns if col not in ordered]
                df[ordered].to_csv(path, index=False, quoting=csv.QUOTE_NONNUMERIC)
                logger.info(f"Added columns {missing_columns} to {csv_path}")

            return True

        except Exception as e:
            logger.error(f"Failed to check CSV {csv_path}: {e}", exc_info=True)
            return False

    @staticmethod
    def _row_values(row_dict: dict[str, Any], class_obj: Any) -> list[Any]:
        if not is_dataclass(class_obj):
            raise ValueError("is not dataclass")
        dataclass_fields = list(fields(class_obj))

        missing_required = [f.name for f in dataclass_fields if f.name not in row_dict]
        if missing_required:
            raise ValueError(f"missing required fields: {missing_required}")

        hints = typing.get_type_hints(class_obj)
        output_row = []
        for f in dataclass_fields:
            val = row_dict[f.name]
            # 字符串字段保持为字符串 (例如数字形式的 instance id)
            if hints.get(f.name) is str and not isinstance(val, str):
                val = str(val)
            if isinstance(val, bool):
                val = int(val)
            output_row.append(val)
        return output_row

    @staticmethod
    def save_to_csv(csv_path: str | Path, row_dict: dict[str, Any], class_obj: Any):
        """按 dataclass 字段顺序追加一行"""
        CsvHandler.save_rows_to_csv(csv_path, [row_dict], class_obj)

    @staticmethod
    def save_rows_to_csv(csv_path: str | Path, rows: Iterable[dict[str, Any]], class_obj: Any):
        """
        按 dataclass 字段顺序批量追加多行, 使用 QUOTE_NONNUMERIC 保证字符串被引用。
        """
        output_rows = [CsvHandler._row_values(row, class_obj) for row in rows]
        CsvHandler.check_csv(csv_path, [f.name for f in fields(class_obj)])

        with open(Path(csv_path), mode="a", newline="", encoding="utf-8") as file:
            writer = csv.writer(file, quoting=csv.QUOTE_NONNUMERIC)
            writer.writerows(output_rows)

    @staticmethod
    def read_records(csv_path: str | Path, class_obj: type[T]) -> list[T]:
        """
        Parse a CSV written by ``save_rows_to_csv`` back into dataclass instances.

        Columns are coerced to the dataclass field types (str, int, float, bool).
        """
        hints = typing.get_type_hints(class_obj)
        names = [f.name for f in fields(class_obj)]
        df = pd.read_csv(Path(csv_path), dtype={n: str for n in names if hints.get(n) is str}, keep_default_na=False)

        records = []
        for row in df.to_dict(orient="records"):
            kwargs = {}
            for name in names:
                kwargs[name] = _coerce(row[name], hints.get(name))
            records.append(class_obj(**kwargs))
        return records

    @staticmethod
    def delete_csv(csv_path: str | Path, not_exists_ok: bool = False) -> bool:
        """
        删除指定 CSV 文件。
        - 文件存在且删除成功 -> True
        - 文件不存在 -> not_exists_ok
        - 删除失败(权限/占用等) -> False
        """
        path = Path(csv_path)

        if not path.exists():
            return not_exists_ok

        try:
            path.unlink()
            return True
        except (OSError, PermissionError):
            return False


def _coerce(value: Any, hint: Any) -> Any:
    if hint is bool:
        return bool(int(value))
    if hint is int:
        return int(value)
    if hint is float:
        return float(value)
    if hint is str:
        return str(value)
    # Optional[float] etc.: empty cell means None
    args = typing.get_args(hint)
    if type(None) in args:
        if value == "" or value is None or (isinstance(value, float) and pd.isna(value)):
            return None
        inner = next(a for a in args if a is not type(None))
        return _coerce(value, inner)
    return value
