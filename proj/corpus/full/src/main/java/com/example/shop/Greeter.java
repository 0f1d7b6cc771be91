package com.example.shop;

public class Greeter {
    public String greet(Customer customer) {
        return customer.isPremium() ? "Dear " + customer.getName() : "Hi " + customer.getName();
    }
}
