"""
核心算法包

包含 RIS 辅助全双工 MISO 系统的信道、信号模型、波束成形、神经网络、DRL 与复杂度统计模块
"""
