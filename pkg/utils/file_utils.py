import logging
import os
import shutil
from pathlib import Path
from typing import List

logger = logging.getLogger(__name__)


def ensure_directory_exists(directory_path: str) -> bool:
    try:
        Path(directory_path).mkdir(parents=True, exist_ok=True)
        return True
    except OSError as e:
        logger.error("Erreur création répertoire %s: %s", directory_path, e)
        return False


def safe_text_save(text: str, file_path: str) -> bool:
    """Écriture atomique: fichier temporaire puis déplacement."""
    temp_file = f"{file_path}.tmp"
    try:
        parent_dir = os.path.dirname(file_path)
        if parent_dir and not ensure_directory_exists(parent_dir):
            return False
        with open(temp_file, 'w', encoding='utf-8') as f:
            f.write(text)
        shutil.move(temp_file, file_path)
        return True
    except OSError as e:
        logger.error("Erreur sauvegarde %s: %s", file_path, e)
        if os.path.exists(temp_file):
            os.remove(temp_file)
        return False


def read_text_lines(file_path: str) -> List[str]:
    """Lignes du fichier; OSError remonte à l'appelant."""
    with open(file_path, 'r', encoding='utf-8') as f:
        return f.read().splitlines()
