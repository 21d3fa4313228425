# Copyright (c) 2025 ProxSTORM
